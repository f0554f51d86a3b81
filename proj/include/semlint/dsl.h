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

#ifndef SEMLINT_DSL_H_
#define SEMLINT_DSL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "semlint/source_pos.h"
#include "semlint/term.h"

namespace semlint {

// Variables that are always bound from the current node's position.
inline constexpr std::string_view kSourceFileVar = "SourceFile";
inline constexpr std::string_view kSourceLineVar = "SourceLine";

// ---------------------------------------------------------------------------
// Tokens

enum class TokenKind {
  kSkipMarker,     // <*
  kRuleArrow,      // =>
  kQuestion,       // ?
  kSlash,          // /
  kThenArrow,      // ->
  kAmp,            // &
  kAssign,         // :=
  kSemicolon,      // ;
  kLtDollar,       // <$
  kLtSlash,        // </
  kSlashGt,        // />
  kLParen,         // (
  kRParen,         // )
  kComma,          // ,
  kEquals,         // =
  kDollar,         // $
  kLt,             // <
  kGt,             // >
  kName,
  kString,
  kText,
  kEnd,
};

const char* TokenKindName(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string lexeme;  // decoded value for strings, raw text for TEXT
  SourcePos pos;
  bool spaced = false;  // whitespace preceded this token

  friend bool operator==(const Token&, const Token&) = default;
};

// Mode-switching lexer. Outside of element constructs it produces term
// tokens; between an open tag and its matching close tag it produces TEXT
// and tag tokens. Whitespace-only runs inside element content produce no
// token but set `spaced` on the following token.
//
// Throws Error(kLex) on an unterminated string or tag.
std::vector<Token> Tokenize(std::string_view text, const std::string& file);

// ---------------------------------------------------------------------------
// AST

struct AttrPattern {
  enum class ValueKind { kStr, kVar, kAnon };

  std::string name;
  ValueKind value_kind = ValueKind::kStr;
  std::string value;  // string literal or variable name

  friend bool operator==(const AttrPattern&, const AttrPattern&) = default;
};

// An XML element extended with logical variables.
struct Pattern {
  enum class Kind { kElem, kEmptyElem, kVar, kAnon, kText };

  Kind kind = Kind::kElem;
  std::string name;  // element name or variable name
  std::string text;  // raw text for kText
  std::vector<AttrPattern> attrs;
  std::vector<Pattern> children;
  // Whitespace preceded this item (`spaced`) or its close tag
  // (`close_spaced`) in the rule source; only rendering looks at these.
  bool spaced = false;
  bool close_spaced = false;

  bool is_element() const {
    return kind == Kind::kElem || kind == Kind::kEmptyElem;
  }
  bool is_variable() const { return kind == Kind::kVar || kind == Kind::kAnon; }

  static Pattern Elem(std::string name, std::vector<AttrPattern> attrs,
                      std::vector<Pattern> children);
  static Pattern EmptyElem(std::string name, std::vector<AttrPattern> attrs);
  static Pattern Var(std::string name);
  static Pattern Anon();
  static Pattern Text(std::string text);

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct EqCondition {
  std::string env_var;
  Term rhs;

  friend bool operator==(const EqCondition&, const EqCondition&) = default;
};

struct ContainsCondition {
  std::string var;
  Pattern pattern;

  friend bool operator==(const ContainsCondition&,
                         const ContainsCondition&) = default;
};

using Condition = std::variant<EqCondition, ContainsCondition>;

struct AssignAction {
  std::string env_var;
  Term value;

  friend bool operator==(const AssignAction&, const AssignAction&) = default;
};

struct AssertAction {
  Term fact;

  friend bool operator==(const AssertAction&, const AssertAction&) = default;
};

using Action = std::variant<AssignAction, AssertAction>;

enum class Polarity {
  kIfAbsent,   // `? goal / consequence`: report when the goal fails
  kIfPresent,  // `? goal -> consequence`: report once per solution
};

using Consequence = std::variant<Pattern, Term>;

struct Test {
  Polarity polarity = Polarity::kIfAbsent;
  Term goal;
  Consequence consequence;

  friend bool operator==(const Test&, const Test&) = default;
};

struct Rule {
  std::size_t index = 0;
  Pattern pattern;
  std::vector<Condition> conditions;
  std::variant<std::vector<Action>, Test> body;
  bool skipped = false;
  SourcePos pos;

  bool is_test() const { return std::holds_alternative<Test>(body); }
  const Test& test() const { return std::get<Test>(body); }
  const std::vector<Action>& actions() const {
    return std::get<std::vector<Action>>(body);
  }
};

struct RuleSet {
  std::vector<Rule> rules;
  std::string source_hash;
};

struct RuleSource {
  std::string file;
  std::string text;
};

// Parses one rule file.
//
// Throws Error(kLex) / Error(kParse). Parse errors name the expected token
// set and the token found; a close tag that does not match its open tag is
// reported with both positions.
RuleSet ParseRules(std::string_view text, const std::string& file);

// Parses several files as one ruleset; rule indices run across files in
// the given order and the source hash covers every file.
RuleSet ParseRuleFiles(const std::vector<RuleSource>& sources);

// Content digest over the rule sources in order (file names excluded).
std::string RuleSourcesDigest(const std::vector<RuleSource>& sources);

// Parses a single term in rule syntax, e.g. `pub("T",$X)`.
Term ParseTerm(std::string_view text, const std::string& file = "<term>");

// Signatures of every assertion in the ruleset (name, arity).
std::vector<std::pair<std::string, std::size_t>> AssertedSignatures(
    const RuleSet& rules);

}  // namespace semlint

#endif  // SEMLINT_DSL_H_
