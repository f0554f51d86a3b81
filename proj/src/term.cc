// Copyright 2026 The semlint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "semlint/term.h"

#include <algorithm>

namespace semlint {

bool Term::IsGround() const {
  if (is_var()) return false;
  return std::all_of(args.begin(), args.end(),
                     [](const Term& a) { return a.IsGround(); });
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind <=> b.kind;
  if (auto c = a.name <=> b.name; c != 0) return c;
  if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string QuoteString(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        out.push_back(ch);
    }
  }
  out.push_back('"');
  return out;
}

static void AppendCanonical(const Term& t, std::string& out) {
  switch (t.kind) {
    case Term::Kind::kVar:
      out += '$';
      out += t.name;
      return;
    case Term::Kind::kStr:
      out += QuoteString(t.name);
      return;
    case Term::Kind::kFunctor:
      out += t.name;
      out += '(';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ',';
        AppendCanonical(t.args[i], out);
      }
      out += ')';
      return;
  }
}

std::string ToCanonical(const Term& t) {
  std::string out;
  AppendCanonical(t, out);
  return out;
}

void CollectVars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name) == out.end()) {
      out.push_back(t.name);
    }
    return;
  }
  for (const Term& a : t.args) CollectVars(a, out);
}

}  // namespace semlint
