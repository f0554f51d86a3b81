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

#include "semlint/report.h"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <utility>

#include "semlint/error.h"

namespace semlint {

std::weak_ordering operator<=>(const Message& a, const Message& b) {
  if (auto c = a.pos.file <=> b.pos.file; c != 0) return c;
  if (auto c = a.pos.line <=> b.pos.line; c != 0) return c;
  if (auto c = a.rule_index <=> b.rule_index; c != 0) return c;
  if (auto c = a.solution_key <=> b.solution_key; c != 0) return c;
  if (auto c = a.html <=> b.html; c != 0) return c;
  return a.text <=> b.text;
}

std::string EscapeHtml(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string VarText(const std::string& name, const Bindings& b) {
  Term t = Substitute(Term::Var(name), b);
  if (t.is_var()) {
    throw Error(ErrorKind::kUnboundInConsequence,
                "$" + name + " is not bound when rendering the message");
  }
  return t.is_str() ? t.name : ToCanonical(t);
}

void RenderPattern(const Pattern& p, const Bindings& b, std::string& html,
                   std::string& text) {
  if (p.spaced) {
    html += ' ';
    text += ' ';
  }
  switch (p.kind) {
    case Pattern::Kind::kText:
      html += p.text;
      text += p.text;
      return;
    case Pattern::Kind::kVar: {
      std::string v = VarText(p.name, b);
      html += EscapeHtml(v);
      text += v;
      return;
    }
    case Pattern::Kind::kAnon:
      return;
    case Pattern::Kind::kElem:
    case Pattern::Kind::kEmptyElem:
      break;
  }
  html += '<';
  html += p.name;
  for (const AttrPattern& a : p.attrs) {
    if (a.value_kind == AttrPattern::ValueKind::kAnon) continue;
    std::string v = a.value_kind == AttrPattern::ValueKind::kVar
                        ? VarText(a.value, b)
                        : a.value;
    html += ' ' + a.name + "=\"" + EscapeHtml(v) + '"';
  }
  if (p.kind == Pattern::Kind::kEmptyElem) {
    html += "/>";
    return;
  }
  html += '>';
  for (const Pattern& c : p.children) RenderPattern(c, b, html, text);
  if (p.close_spaced) {
    html += ' ';
    text += ' ';
  }
  html += "</" + p.name + '>';
}

}  // namespace

Rendered RenderConsequence(const Consequence& c, const Bindings& b) {
  if (const auto* term = std::get_if<Term>(&c)) {
    Term t = Substitute(*term, b);
    std::vector<std::string> unbound;
    CollectVars(t, unbound);
    if (!unbound.empty()) {
      throw Error(ErrorKind::kUnboundInConsequence,
                  "$" + unbound.front() + " is not bound when rendering the message");
    }
    std::string s = ToCanonical(t);
    return {EscapeHtml(s), s};
  }
  std::string html;
  std::string text;
  RenderPattern(std::get<Pattern>(c), b, html, text);
  return {NormalizeSpace(html), NormalizeSpace(text)};
}

std::optional<ReportFormat> ParseReportFormat(std::string_view name) {
  if (name == "html") return ReportFormat::kHtml;
  if (name == "text") return ReportFormat::kText;
  if (name == "machine") return ReportFormat::kMachine;
  return std::nullopt;
}

namespace {

std::string Plural(std::size_t n, const char* word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::string Summary(std::size_t messages,
                    std::span<const Diagnostic> diagnostics) {
  std::string s = Plural(messages, "message");
  if (!diagnostics.empty()) s += ", " + Plural(diagnostics.size(), "diagnostic");
  bool errors = std::any_of(diagnostics.begin(), diagnostics.end(),
                            [](const Diagnostic& d) {
                              return d.severity == Diagnostic::Severity::kError;
                            });
  if (messages == 0 && !errors) s += ": OK";
  return s;
}

nlohmann::json DiagnosticJson(const Diagnostic& d) {
  nlohmann::json j;
  j["severity"] = d.severity == Diagnostic::Severity::kError ? "error" : "warning";
  j["kind"] = d.kind;
  j["message"] = d.message;
  if (d.pos) {
    j["file"] = d.pos->file;
    j["line"] = d.pos->line;
  }
  return j;
}

}  // namespace

std::string EmitReport(std::vector<Message> msgs,
                       std::span<const Diagnostic> diagnostics,
                       ReportFormat format) {
  std::sort(msgs.begin(), msgs.end());
  msgs.erase(std::unique(msgs.begin(), msgs.end()), msgs.end());
  std::vector<Diagnostic> diags(diagnostics.begin(), diagnostics.end());
  std::sort(diags.begin(), diags.end());
  diags.erase(std::unique(diags.begin(), diags.end()), diags.end());

  std::string out;
  switch (format) {
    case ReportFormat::kHtml:
      out += "<ul>\n";
      for (const Message& m : msgs) {
        if (m.html.starts_with("<li")) {
          out += m.html;
        } else {
          out += "<li> " + m.html + " </li>";
        }
        out += '\n';
      }
      out += "</ul>\n";
      for (const Diagnostic& d : diags) {
        out += "<p class=\"diagnostic\">" + EscapeHtml(d.ToString()) + "</p>\n";
      }
      out += "<p class=\"summary\">" + Summary(msgs.size(), diags) + "</p>\n";
      break;
    case ReportFormat::kText:
      for (const Message& m : msgs) {
        out += m.pos.ToString() + ": " + m.text + '\n';
      }
      for (const Diagnostic& d : diags) out += d.ToString() + '\n';
      out += Summary(msgs.size(), diags) + '\n';
      break;
    case ReportFormat::kMachine:
      for (const Message& m : msgs) {
        nlohmann::json j;
        j["file"] = m.pos.file;
        j["line"] = m.pos.line;
        j["rule"] = m.rule_index;
        j["text"] = m.text;
        j["html"] = m.html;
        out += j.dump() + '\n';
      }
      for (const Diagnostic& d : diags) {
        nlohmann::json j;
        j["diagnostic"] = DiagnosticJson(d);
        out += j.dump() + '\n';
      }
      {
        nlohmann::json j;
        j["summary"]["messages"] = msgs.size();
        j["summary"]["diagnostics"] = diags.size();
        j["summary"]["text"] = Summary(msgs.size(), diags);
        out += j.dump() + '\n';
      }
      break;
  }
  return out;
}

}  // namespace semlint
