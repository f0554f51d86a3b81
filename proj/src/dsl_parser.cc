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

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semlint/digest.h"
#include "semlint/dsl.h"
#include "semlint/error.h"

namespace semlint {

Pattern Pattern::Elem(std::string name, std::vector<AttrPattern> attrs,
                      std::vector<Pattern> children) {
  Pattern p;
  p.kind = Kind::kElem;
  p.name = std::move(name);
  p.attrs = std::move(attrs);
  p.children = std::move(children);
  return p;
}

Pattern Pattern::EmptyElem(std::string name, std::vector<AttrPattern> attrs) {
  Pattern p;
  p.kind = Kind::kEmptyElem;
  p.name = std::move(name);
  p.attrs = std::move(attrs);
  return p;
}

Pattern Pattern::Var(std::string name) {
  Pattern p;
  p.kind = Kind::kVar;
  p.name = std::move(name);
  return p;
}

Pattern Pattern::Anon() {
  Pattern p;
  p.kind = Kind::kAnon;
  return p;
}

Pattern Pattern::Text(std::string text) {
  Pattern p;
  p.kind = Kind::kText;
  p.text = std::move(text);
  return p;
}

namespace {

using VarSet = std::set<std::string, std::less<>>;

// Variables bound by matching `p`. Element-position variables go to
// `elements`; every variable goes to `all`.
void PatternVars(const Pattern& p, VarSet& all, VarSet* elements) {
  switch (p.kind) {
    case Pattern::Kind::kVar:
      all.insert(p.name);
      if (elements) elements->insert(p.name);
      return;
    case Pattern::Kind::kElem:
    case Pattern::Kind::kEmptyElem:
      for (const AttrPattern& a : p.attrs) {
        if (a.value_kind == AttrPattern::ValueKind::kVar) all.insert(a.value);
      }
      for (const Pattern& c : p.children) PatternVars(c, all, elements);
      return;
    default:
      return;
  }
}

void TermVars(const Term& t, VarSet& out) {
  std::vector<std::string> names;
  CollectVars(t, names);
  out.insert(names.begin(), names.end());
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::string& file)
      : toks_(std::move(tokens)), file_(file) {}

  std::vector<Rule> ParseAll() {
    std::vector<Rule> rules;
    while (Cur().kind != TokenKind::kEnd) {
      rules.push_back(ParseRule1(rules.size()));
    }
    return rules;
  }

  Term ParseSingleTerm() {
    Term t = ParseTerm();
    Expect(TokenKind::kEnd);
    return t;
  }

 private:
  const Token& Cur() const { return toks_[i_]; }
  const Token& PeekTok(std::size_t ahead) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  bool At(TokenKind k) const { return Cur().kind == k; }
  const Token& Take() {
    const Token& t = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return t;
  }

  [[noreturn]] void Fail(const std::vector<TokenKind>& expected) const {
    std::string exp;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (k) exp += k + 1 == expected.size() ? " or " : ", ";
      exp += TokenKindName(expected[k]);
    }
    std::string found = TokenKindName(Cur().kind);
    if (!Cur().lexeme.empty() && Cur().kind != TokenKind::kEnd) {
      found += " '" + Cur().lexeme + "'";
    }
    throw Error(ErrorKind::kParse, Cur().pos,
                "expected " + exp + ", found " + found);
  }

  [[noreturn]] void FailAt(const SourcePos& pos, std::string detail) const {
    throw Error(ErrorKind::kParse, pos, std::move(detail));
  }

  const Token& Expect(TokenKind k) {
    if (!At(k)) Fail({k});
    return Take();
  }

  Rule ParseRule1(std::size_t index) {
    Rule rule;
    rule.index = index;
    rule.pos = Cur().pos;
    if (At(TokenKind::kSkipMarker)) {
      Take();
      rule.skipped = true;
    }
    rule.pattern = ParseHead();
    while (At(TokenKind::kAmp)) {
      Take();
      rule.conditions.push_back(ParseCondition());
    }
    if (At(TokenKind::kRuleArrow)) {
      Take();
      std::vector<Action> actions;
      actions.push_back(ParseAction());
      while (At(TokenKind::kAmp)) {
        Take();
        actions.push_back(ParseAction());
      }
      rule.body = std::move(actions);
    } else if (At(TokenKind::kQuestion)) {
      Take();
      rule.body = ParseTest();
    } else {
      Fail({TokenKind::kAmp, TokenKind::kRuleArrow, TokenKind::kQuestion});
    }
    Expect(TokenKind::kSemicolon);
    Check(rule);
    return rule;
  }

  Pattern ParseHead() {
    if (At(TokenKind::kString)) {
      Pattern p = Pattern::Text(Take().lexeme);
      return p;
    }
    if (At(TokenKind::kLtDollar)) {
      FailAt(Cur().pos, "a rule head must be an element or text, not a variable");
    }
    if (!At(TokenKind::kLt)) Fail({TokenKind::kLt, TokenKind::kString});
    return ParseElement();
  }

  // element: '<' NAME attr* ('/>' | '>' element* '</' NAME '>')
  //        | '<$' NAME '>' | TEXT
  Pattern ParseElement() {
    bool spaced = Cur().spaced;
    if (At(TokenKind::kText)) {
      Pattern p = Pattern::Text(Take().lexeme);
      p.spaced = spaced;
      return p;
    }
    if (At(TokenKind::kLtDollar)) {
      Take();
      std::string name = Expect(TokenKind::kName).lexeme;
      Expect(TokenKind::kGt);
      Pattern p = name == "_" ? Pattern::Anon() : Pattern::Var(std::move(name));
      p.spaced = spaced;
      return p;
    }
    if (!At(TokenKind::kLt)) {
      Fail({TokenKind::kLt, TokenKind::kLtDollar, TokenKind::kText});
    }
    SourcePos open_pos = Take().pos;
    std::string name = Expect(TokenKind::kName).lexeme;
    std::vector<AttrPattern> attrs;
    while (At(TokenKind::kName)) {
      const Token& attr_tok = Cur();
      AttrPattern a = ParseAttr();
      for (const AttrPattern& other : attrs) {
        if (other.name == a.name) {
          FailAt(attr_tok.pos, "duplicate attribute " + a.name + " in <" +
                                   name + ">");
        }
      }
      attrs.push_back(std::move(a));
    }
    if (At(TokenKind::kSlashGt)) {
      Take();
      Pattern p = Pattern::EmptyElem(std::move(name), std::move(attrs));
      p.spaced = spaced;
      return p;
    }
    if (!At(TokenKind::kGt)) {
      Fail({TokenKind::kName, TokenKind::kGt, TokenKind::kSlashGt});
    }
    Take();
    std::vector<Pattern> children;
    while (!At(TokenKind::kLtSlash)) {
      children.push_back(ParseElement());
    }
    bool close_spaced = Cur().spaced;
    Take();
    const Token& close = Expect(TokenKind::kName);
    if (close.lexeme != name) {
      FailAt(close.pos, "close tag " + close.lexeme + " does not match " +
                            name + " opened at " + open_pos.ToString());
    }
    Expect(TokenKind::kGt);
    Pattern p = Pattern::Elem(std::move(name), std::move(attrs),
                              std::move(children));
    p.spaced = spaced;
    p.close_spaced = close_spaced;
    return p;
  }

  AttrPattern ParseAttr() {
    AttrPattern a;
    a.name = Take().lexeme;
    Expect(TokenKind::kEquals);
    if (At(TokenKind::kString)) {
      a.value_kind = AttrPattern::ValueKind::kStr;
      a.value = Take().lexeme;
    } else if (At(TokenKind::kDollar)) {
      Take();
      std::string v = Expect(TokenKind::kName).lexeme;
      if (v == "_") {
        a.value_kind = AttrPattern::ValueKind::kAnon;
      } else {
        a.value_kind = AttrPattern::ValueKind::kVar;
        a.value = std::move(v);
      }
    } else {
      Fail({TokenKind::kString, TokenKind::kDollar});
    }
    return a;
  }

  Condition ParseCondition() {
    if (At(TokenKind::kDollar)) {
      Take();
      std::string var = Expect(TokenKind::kName).lexeme;
      if (!(At(TokenKind::kName) && Cur().lexeme == "contains")) {
        Fail({TokenKind::kName});
      }
      Take();
      if (!At(TokenKind::kLt) && !At(TokenKind::kLtDollar)) {
        Fail({TokenKind::kLt, TokenKind::kLtDollar});
      }
      return ContainsCondition{std::move(var), ParseElement()};
    }
    if (!At(TokenKind::kName)) Fail({TokenKind::kName, TokenKind::kDollar});
    std::string name = Take().lexeme;
    Expect(TokenKind::kEquals);
    return EqCondition{std::move(name), ParseTerm()};
  }

  Action ParseAction() {
    if (At(TokenKind::kName) && PeekTok(1).kind == TokenKind::kAssign) {
      std::string name = Take().lexeme;
      Take();
      return AssignAction{std::move(name), ParseTerm()};
    }
    SourcePos pos = Cur().pos;
    Term t = ParseTerm();
    if (!t.is_functor()) {
      FailAt(pos, "an assertion must be a functor term, found " +
                      ToCanonical(t));
    }
    return AssertAction{std::move(t)};
  }

  Test ParseTest() {
    Test test;
    SourcePos pos = Cur().pos;
    test.goal = ParseTerm();
    if (!test.goal.is_functor()) {
      FailAt(pos, "a test goal must be a predicate, found " +
                      ToCanonical(test.goal));
    }
    if (At(TokenKind::kSlash)) {
      test.polarity = Polarity::kIfAbsent;
    } else if (At(TokenKind::kThenArrow)) {
      test.polarity = Polarity::kIfPresent;
    } else {
      Fail({TokenKind::kSlash, TokenKind::kThenArrow});
    }
    Take();
    if (At(TokenKind::kLt) || At(TokenKind::kLtDollar)) {
      test.consequence = ParseElement();
    } else {
      test.consequence = ParseTerm();
    }
    return test;
  }

  // term: NAME '(' [term (',' term)*] ')' | STRING | '$' NAME
  Term ParseTerm() {
    if (At(TokenKind::kString)) return Term::Str(Take().lexeme);
    if (At(TokenKind::kDollar)) {
      Take();
      std::string name = Expect(TokenKind::kName).lexeme;
      if (name == "_") {
        FailAt(Cur().pos, "the anonymous variable cannot appear in a term");
      }
      return Term::Var(std::move(name));
    }
    if (!At(TokenKind::kName)) {
      Fail({TokenKind::kName, TokenKind::kString, TokenKind::kDollar});
    }
    std::string name = Take().lexeme;
    Expect(TokenKind::kLParen);
    std::vector<Term> args;
    if (!At(TokenKind::kRParen)) {
      args.push_back(ParseTerm());
      while (At(TokenKind::kComma)) {
        Take();
        args.push_back(ParseTerm());
      }
    }
    Expect(TokenKind::kRParen);
    return Term::Functor(std::move(name), std::move(args));
  }

  // Scoping checks that the grammar alone cannot express.
  void Check(const Rule& rule) const {
    VarSet bound{std::string(kSourceFileVar), std::string(kSourceLineVar)};
    VarSet element_vars;
    PatternVars(rule.pattern, bound, &element_vars);
    for (const Condition& c : rule.conditions) {
      if (const auto* contains = std::get_if<ContainsCondition>(&c)) {
        if (!element_vars.contains(contains->var)) {
          FailAt(rule.pos, "$" + contains->var +
                               " in contains must be an element variable of "
                               "the rule pattern");
        }
        PatternVars(contains->pattern, bound, nullptr);
      } else {
        TermVars(std::get<EqCondition>(c).rhs, bound);
      }
    }
    auto require = [&](const Term& t, const VarSet& scope, const char* where) {
      std::vector<std::string> names;
      CollectVars(t, names);
      for (const std::string& n : names) {
        if (!scope.contains(n)) {
          FailAt(rule.pos, "variable $" + n + " in " + where +
                               " is not bound by the pattern or conditions");
        }
      }
    };
    if (!rule.is_test()) {
      for (const Action& a : rule.actions()) {
        if (const auto* assign = std::get_if<AssignAction>(&a)) {
          require(assign->value, bound, "assignment");
        } else {
          require(std::get<AssertAction>(a).fact, bound, "assertion");
        }
      }
      return;
    }
    const Test& test = rule.test();
    VarSet scope = bound;
    TermVars(test.goal, scope);
    if (const auto* term = std::get_if<Term>(&test.consequence)) {
      require(*term, scope, "consequence");
    } else {
      VarSet used;
      PatternVars(std::get<Pattern>(test.consequence), used, nullptr);
      for (const std::string& n : used) {
        if (!scope.contains(n)) {
          FailAt(rule.pos, "variable $" + n +
                               " in consequence is bound neither by the "
                               "pattern, the conditions nor the goal");
        }
      }
    }
  }

  std::vector<Token> toks_;
  const std::string& file_;
  std::size_t i_ = 0;
};

}  // namespace

std::string RuleSourcesDigest(const std::vector<RuleSource>& sources) {
  std::string buf = "semlint-rules-v1\n";
  for (const RuleSource& s : sources) {
    buf += std::to_string(s.text.size());
    buf += '\n';
    buf += s.text;
  }
  return Sha256Hex(buf);
}

RuleSet ParseRules(std::string_view text, const std::string& file) {
  return ParseRuleFiles({RuleSource{file, std::string(text)}});
}

RuleSet ParseRuleFiles(const std::vector<RuleSource>& sources) {
  RuleSet set;
  for (const RuleSource& src : sources) {
    Parser parser(Tokenize(src.text, src.file), src.file);
    for (Rule& r : parser.ParseAll()) {
      r.index = set.rules.size();
      set.rules.push_back(std::move(r));
    }
  }
  set.source_hash = RuleSourcesDigest(sources);
  return set;
}

Term ParseTerm(std::string_view text, const std::string& file) {
  return Parser(Tokenize(text, file), file).ParseSingleTerm();
}

std::vector<std::pair<std::string, std::size_t>> AssertedSignatures(
    const RuleSet& rules) {
  std::set<std::pair<std::string, std::size_t>> sigs;
  for (const Rule& r : rules.rules) {
    if (r.is_test()) continue;
    for (const Action& a : r.actions()) {
      if (const auto* as = std::get_if<AssertAction>(&a)) {
        sigs.emplace(as->fact.name, as->fact.arity());
      }
    }
  }
  return {sigs.begin(), sigs.end()};
}

}  // namespace semlint
