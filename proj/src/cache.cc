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

#include "semlint/cache.h"

#include <charconv>
#include <string>
#include <utility>
#include <vector>

#include "semlint/error.h"

namespace semlint {

namespace {

Term Flags(const Pattern& p) {
  std::string f;
  if (p.spaced) f += 's';
  if (p.close_spaced) f += 'c';
  return Term::Str(std::move(f));
}

void ApplyFlags(const Term& t, Pattern& p) {
  if (!t.is_str()) throw Error(ErrorKind::kCache, "bad pattern flags");
  p.spaced = t.name.find('s') != std::string::npos;
  p.close_spaced = t.name.find('c') != std::string::npos;
}

Term AttrsTerm(const std::vector<AttrPattern>& attrs) {
  Term out = Term::Functor("attrs");
  for (const AttrPattern& a : attrs) {
    Term v;
    switch (a.value_kind) {
      case AttrPattern::ValueKind::kStr:
        v = Term::Functor("str", {Term::Str(a.value)});
        break;
      case AttrPattern::ValueKind::kVar:
        v = Term::Functor("var", {Term::Str(a.value)});
        break;
      case AttrPattern::ValueKind::kAnon:
        v = Term::Functor("anon");
        break;
    }
    out.args.push_back(Term::Functor("attr", {Term::Str(a.name), std::move(v)}));
  }
  return out;
}

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorKind::kCache, "malformed cache entry: " + what);
}

const Term& Arg(const Term& t, std::size_t i) {
  if (i >= t.args.size()) Bad(ToCanonical(t));
  return t.args[i];
}

const std::string& StrArg(const Term& t, std::size_t i) {
  const Term& a = Arg(t, i);
  if (!a.is_str()) Bad(ToCanonical(t));
  return a.name;
}

std::vector<AttrPattern> TermToAttrs(const Term& t) {
  if (t.name != "attrs") Bad(ToCanonical(t));
  std::vector<AttrPattern> out;
  for (const Term& a : t.args) {
    AttrPattern ap;
    ap.name = StrArg(a, 0);
    const Term& v = Arg(a, 1);
    if (v.name == "str") {
      ap.value_kind = AttrPattern::ValueKind::kStr;
      ap.value = StrArg(v, 0);
    } else if (v.name == "var") {
      ap.value_kind = AttrPattern::ValueKind::kVar;
      ap.value = StrArg(v, 0);
    } else if (v.name == "anon") {
      ap.value_kind = AttrPattern::ValueKind::kAnon;
    } else {
      Bad(ToCanonical(v));
    }
    out.push_back(std::move(ap));
  }
  return out;
}

std::size_t ParseIndex(const std::string& s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    Bad("number expected, got \"" + s + "\"");
  }
  return v;
}

Term PosTerm(const SourcePos& pos) {
  return Term::Functor("pos",
                       {Term::Str(pos.file), Term::Str(std::to_string(pos.line))});
}

SourcePos TermToPos(const Term& t) {
  if (t.name != "pos") Bad(ToCanonical(t));
  return SourcePos{StrArg(t, 0), ParseIndex(StrArg(t, 1))};
}

Term TestTerm(const DelayedTest& t) {
  Term bindings = Term::Functor("bindings");
  for (const auto& [name, value] : t.captured.entries()) {
    bindings.args.push_back(
        Term::Functor("b", {Term::Str(name), ValueToTerm(value)}));
  }
  Term conseq;
  if (const auto* term = std::get_if<Term>(&t.consequence)) {
    conseq = Term::Functor("term", {*term});
  } else {
    conseq =
        Term::Functor("pattern", {PatternToTerm(std::get<Pattern>(t.consequence))});
  }
  return Term::Functor(
      "test", {Term::Functor(t.polarity == Polarity::kIfAbsent ? "ifnot" : "if"),
               Term::Str(std::to_string(t.rule_index)), PosTerm(t.pos), t.goal,
               std::move(bindings), std::move(conseq)});
}

DelayedTest TermToTest(const Term& t) {
  if (t.name != "test" || t.arity() != 6) Bad(ToCanonical(t));
  DelayedTest out;
  const std::string& pol = Arg(t, 0).name;
  if (pol == "ifnot") {
    out.polarity = Polarity::kIfAbsent;
  } else if (pol == "if") {
    out.polarity = Polarity::kIfPresent;
  } else {
    Bad("polarity " + pol);
  }
  out.rule_index = ParseIndex(StrArg(t, 1));
  out.pos = TermToPos(Arg(t, 2));
  out.goal = Arg(t, 3);
  for (const Term& b : Arg(t, 4).args) {
    out.captured = out.captured.With(StrArg(b, 0), Value::OfTerm(Arg(b, 1)));
  }
  const Term& conseq = Arg(t, 5);
  if (conseq.name == "term") {
    out.consequence = Arg(conseq, 0);
  } else if (conseq.name == "pattern") {
    out.consequence = TermToPattern(Arg(conseq, 0));
  } else {
    Bad(ToCanonical(conseq));
  }
  return out;
}

Term DiagnosticTerm(const Diagnostic& d) {
  return Term::Functor(
      "diag",
      {Term::Functor(d.severity == Diagnostic::Severity::kError ? "error"
                                                                : "warning"),
       d.pos ? PosTerm(*d.pos) : Term::Functor("nopos"), Term::Str(d.kind),
       Term::Str(d.message)});
}

Diagnostic TermToDiagnostic(const Term& t) {
  if (t.name != "diag" || t.arity() != 4) Bad(ToCanonical(t));
  Diagnostic d;
  d.severity = Arg(t, 0).name == "error" ? Diagnostic::Severity::kError
                                         : Diagnostic::Severity::kWarning;
  if (Arg(t, 1).name == "pos") d.pos = TermToPos(Arg(t, 1));
  d.kind = StrArg(t, 2);
  d.message = StrArg(t, 3);
  return d;
}

Term ParseLine(std::string_view line) {
  try {
    return ParseTerm(line, "<cache>");
  } catch (const Error& e) {
    Bad(e.detail());
  }
}

}  // namespace

Term PatternToTerm(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::kElem: {
      Term children = Term::Functor("children");
      for (const Pattern& c : p.children) children.args.push_back(PatternToTerm(c));
      return Term::Functor("elem", {Term::Str(p.name), AttrsTerm(p.attrs),
                                    std::move(children), Flags(p)});
    }
    case Pattern::Kind::kEmptyElem:
      return Term::Functor("empty",
                           {Term::Str(p.name), AttrsTerm(p.attrs), Flags(p)});
    case Pattern::Kind::kVar:
      return Term::Functor("var", {Term::Str(p.name), Flags(p)});
    case Pattern::Kind::kAnon:
      return Term::Functor("anon", {Flags(p)});
    case Pattern::Kind::kText:
      return Term::Functor("text", {Term::Str(p.text), Flags(p)});
  }
  Bad("pattern");
}

Pattern TermToPattern(const Term& t) {
  Pattern p;
  if (t.name == "elem" && t.arity() == 4) {
    std::vector<Pattern> children;
    for (const Term& c : t.args[2].args) children.push_back(TermToPattern(c));
    p = Pattern::Elem(StrArg(t, 0), TermToAttrs(t.args[1]), std::move(children));
  } else if (t.name == "empty" && t.arity() == 3) {
    p = Pattern::EmptyElem(StrArg(t, 0), TermToAttrs(t.args[1]));
  } else if (t.name == "var" && t.arity() == 2) {
    p = Pattern::Var(StrArg(t, 0));
  } else if (t.name == "anon" && t.arity() == 1) {
    p = Pattern::Anon();
  } else if (t.name == "text" && t.arity() == 2) {
    p = Pattern::Text(StrArg(t, 0));
  } else {
    Bad(ToCanonical(t));
  }
  ApplyFlags(t.args.back(), p);
  return p;
}

std::string SerializePassOne(const PassOneResult& result) {
  std::string out;
  out += "#input " + result.input_digest + '\n';
  out += "#rules " + result.rules_digest + '\n';
  for (const Fact& f : result.facts) {
    out += ToCanonical(f.term) + ".%" + std::to_string(f.origin.line) + '\n';
  }
  out += "%tests\n";
  for (const DelayedTest& t : result.tests) out += ToCanonical(TestTerm(t)) + ".\n";
  out += "%diagnostics\n";
  for (const Diagnostic& d : result.diagnostics) {
    out += ToCanonical(DiagnosticTerm(d)) + ".\n";
  }
  return out;
}

PassOneResult DeserializePassOne(std::string_view text,
                                 const std::string& source_file) {
  PassOneResult out;
  out.source_file = source_file;
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    if (nl == std::string_view::npos) Bad("missing final newline");
    lines.push_back(text.substr(0, nl));
    text.remove_prefix(nl + 1);
  }
  if (lines.size() < 4 || !lines[0].starts_with("#input ") ||
      !lines[1].starts_with("#rules ")) {
    Bad("header");
  }
  out.input_digest = std::string(lines[0].substr(7));
  out.rules_digest = std::string(lines[1].substr(7));

  enum class Section { kFacts, kTests, kDiagnostics } section = Section::kFacts;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (line == "%tests") {
      if (section != Section::kFacts) Bad("section order");
      section = Section::kTests;
      continue;
    }
    if (line == "%diagnostics") {
      if (section != Section::kTests) Bad("section order");
      section = Section::kDiagnostics;
      continue;
    }
    if (section == Section::kFacts) {
      std::size_t mark = line.rfind(".%");
      if (mark == std::string_view::npos) Bad(std::string(line));
      Term fact = ParseLine(line.substr(0, mark));
      if (!fact.is_functor() || !fact.IsGround()) Bad(std::string(line));
      std::size_t origin = ParseIndex(std::string(line.substr(mark + 2)));
      out.facts.push_back({std::move(fact), SourcePos{source_file, origin}});
      continue;
    }
    if (!line.ends_with('.')) Bad(std::string(line));
    Term t = ParseLine(line.substr(0, line.size() - 1));
    if (section == Section::kTests) {
      out.tests.push_back(TermToTest(t));
    } else {
      out.diagnostics.push_back(TermToDiagnostic(t));
    }
  }
  if (section != Section::kDiagnostics) Bad("truncated");
  return out;
}

}  // namespace semlint
