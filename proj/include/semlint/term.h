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

#ifndef SEMLINT_TERM_H_
#define SEMLINT_TERM_H_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace semlint {

// Prolog-style term: functor application, string literal or `$`-variable.
struct Term {
  enum class Kind { kVar, kStr, kFunctor };

  Kind kind = Kind::kStr;
  std::string name;  // variable name, string value, or functor name
  std::vector<Term> args;

  static Term Var(std::string name) { return {Kind::kVar, std::move(name), {}}; }
  static Term Str(std::string value) {
    return {Kind::kStr, std::move(value), {}};
  }
  static Term Functor(std::string name, std::vector<Term> args = {}) {
    return {Kind::kFunctor, std::move(name), std::move(args)};
  }

  bool is_var() const { return kind == Kind::kVar; }
  bool is_str() const { return kind == Kind::kStr; }
  bool is_functor() const { return kind == Kind::kFunctor; }
  std::size_t arity() const { return args.size(); }

  bool IsGround() const;

  // Variables < strings < functors; functors by name, arity, then args.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

// Quotes with `"`, escaping `"` and `\` plus newline, tab and carriage
// return so a string always fits on one line.
std::string QuoteString(std::string_view s);

// Canonical text: `f("a",$X,g())`. No whitespace, comma-separated args.
std::string ToCanonical(const Term& t);

// Collects variable names in order of first occurrence.
void CollectVars(const Term& t, std::vector<std::string>& out);

}  // namespace semlint

#endif  // SEMLINT_TERM_H_
