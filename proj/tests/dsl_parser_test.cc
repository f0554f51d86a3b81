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

#include <string>
#include <variant>
#include <vector>

#include "gtest/gtest.h"
#include "semlint/dsl.h"
#include "semlint/error.h"
#include "test_util.h"

namespace semlint {
namespace {

using ::semlint::testing::FixturePath;
using ::semlint::testing::ReadFile;

RuleSet Fixture() {
  std::string path = FixturePath("activity_report.rules");
  return ParseRules(ReadFile(path), path);
}

TEST(DslParserTest, ActivityReportCounts) {
  RuleSet rs = Fixture();
  ASSERT_EQ(rs.rules.size(), 11u);
  std::size_t env = 0, tests = 0;
  for (const Rule& r : rs.rules) (r.is_test() ? tests : env)++;
  // Rules 1-4, 6, 7 and 9 carry actions; 5, 8, 10 and 11 are tests.
  EXPECT_EQ(env, 7u);
  EXPECT_EQ(tests, 4u);
  std::vector<bool> is_test;
  for (const Rule& r : rs.rules) is_test.push_back(r.is_test());
  EXPECT_EQ(is_test, (std::vector<bool>{false, false, false, false, true,
                                        false, false, true, false, true,
                                        true}));
}

TEST(DslParserTest, ActivityReportPositionsAndIndices) {
  RuleSet rs = Fixture();
  std::vector<std::size_t> lines;
  for (std::size_t i = 0; i < rs.rules.size(); ++i) {
    EXPECT_EQ(rs.rules[i].index, i);
    lines.push_back(rs.rules[i].pos.line);
  }
  EXPECT_EQ(lines, (std::vector<std::size_t>{1, 12, 15, 18, 23, 36, 39, 46,
                                             61, 67, 83}));
  EXPECT_FALSE(rs.source_hash.empty());
}

TEST(DslParserTest, ActivityReportShapes) {
  RuleSet rs = Fixture();
  const Rule& pers = rs.rules[3];
  EXPECT_EQ(pers.pattern.name, "pers");
  ASSERT_EQ(pers.conditions.size(), 2u);
  const auto& eq = std::get<EqCondition>(pers.conditions[0]);
  EXPECT_EQ(eq.env_var, "defperso");
  EXPECT_EQ(eq.rhs, Term::Str("true"));
  ASSERT_EQ(pers.actions().size(), 1u);
  EXPECT_EQ(std::get<AssertAction>(pers.actions()[0]).fact,
            ParseTerm("personne($P,$N,$Proj)"));

  const Rule& year = rs.rules[1];
  ASSERT_EQ(year.actions().size(), 2u);
  EXPECT_EQ(std::get<AssignAction>(year.actions()[1]).env_var, "defperso");

  const Rule& title = rs.rules[6];
  ASSERT_EQ(title.conditions.size(), 1u);
  const auto& contains = std::get<ContainsCondition>(title.conditions[0]);
  EXPECT_EQ(contains.var, "A");
  EXPECT_EQ(contains.pattern.name, "btitle");

  EXPECT_EQ(rs.rules[4].test().polarity, Polarity::kIfAbsent);
  EXPECT_EQ(rs.rules[9].test().polarity, Polarity::kIfPresent);
  EXPECT_EQ(rs.rules[10].test().goal,
            ParseTerm("testurl($URL,$Answer1,$Answer2)"));
  EXPECT_TRUE(std::holds_alternative<Pattern>(rs.rules[10].test().consequence));
}

TEST(DslParserTest, UnrepairedRuleFileRejected) {
  std::string path = FixturePath("activity_report_original.rules");
  try {
    ParseRules(ReadFile(path), path);
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_EQ(e.pos().line, 83u);
    EXPECT_NE(e.detail().find("close tag ref does not match xref"),
              std::string::npos)
        << e.what();
  }
}

TEST(DslParserTest, HeadRule) {
  RuleSet rs =
      ParseRules("<head><$P></head> & dept=$X => head($P,$X);", "h.rules");
  ASSERT_EQ(rs.rules.size(), 1u);
  const Rule& r = rs.rules[0];
  EXPECT_FALSE(r.skipped);
  EXPECT_EQ(r.pattern, Pattern::Elem("head", {}, {Pattern::Var("P")}));
  ASSERT_EQ(r.conditions.size(), 1u);
  EXPECT_EQ(std::get<EqCondition>(r.conditions[0]),
            (EqCondition{"dept", Term::Var("X")}));
  ASSERT_EQ(r.actions().size(), 1u);
  EXPECT_EQ(std::get<AssertAction>(r.actions()[0]).fact,
            Term::Functor("head", {Term::Var("P"), Term::Var("X")}));
}

TEST(DslParserTest, CloseTagMismatch) {
  try {
    ParseRules("<a><$_></b> => x := \"1\";", "m.rules");
    FAIL() << "expected ParseError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(e.detail().find("close tag b does not match a"),
              std::string::npos)
        << e.what();
  }
}

TEST(DslParserTest, SkippedRule) {
  RuleSet rs = ParseRules(
      "<* <a><$_></a> => x := \"1\";\n<b/> => y := \"2\";", "s.rules");
  ASSERT_EQ(rs.rules.size(), 2u);
  EXPECT_TRUE(rs.rules[0].skipped);
  EXPECT_FALSE(rs.rules[1].skipped);
  EXPECT_EQ(rs.rules[1].pos.line, 2u);
}

TEST(DslParserTest, AttributeForms) {
  RuleSet rs =
      ParseRules("<p x=$V y=\"1\" z=$_/> => f($V);", "a.rules");
  const Pattern& p = rs.rules[0].pattern;
  EXPECT_EQ(p.kind, Pattern::Kind::kEmptyElem);
  ASSERT_EQ(p.attrs.size(), 3u);
  EXPECT_EQ(p.attrs[0].value_kind, AttrPattern::ValueKind::kVar);
  EXPECT_EQ(p.attrs[1].value_kind, AttrPattern::ValueKind::kStr);
  EXPECT_EQ(p.attrs[2].value_kind, AttrPattern::ValueKind::kAnon);
}

TEST(DslParserTest, SyntaxErrorsNameExpectation) {
  for (const char* text : {"<a/> => x := ;", "<a/> => x := \"1\"",
                           "<a/> x := \"1\";", "<a/> => f(\"x\"); junk"}) {
    try {
      ParseRules(text, "e.rules");
      ADD_FAILURE() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse) << text;
      EXPECT_NE(e.detail().find("expected"), std::string::npos) << e.what();
    }
  }
}

TEST(DslParserTest, ScopingChecks) {
  // Consequence variable bound nowhere.
  EXPECT_THROW(ParseRules("<a/> ? f(\"x\") / <b><$Q></b>;", "s.rules"), Error);
  // Asserted variable bound nowhere.
  EXPECT_THROW(ParseRules("<a/> => f($Q);", "s.rules"), Error);
  // Goal variables may be fresh.
  EXPECT_NO_THROW(ParseRules("<a/> ? f($Q) -> <b><$Q></b>;", "s.rules"));
}

TEST(DslParserTest, MultipleFilesShareIndexSpace) {
  RuleSet rs = ParseRuleFiles({{"one.rules", "<a/> => x := \"1\";"},
                               {"two.rules", "<b/> => y := \"2\";"}});
  ASSERT_EQ(rs.rules.size(), 2u);
  EXPECT_EQ(rs.rules[1].index, 1u);
  EXPECT_EQ(rs.rules[1].pos.file, "two.rules");
  EXPECT_EQ(rs.source_hash,
            RuleSourcesDigest({{"x", "<a/> => x := \"1\";"},
                               {"y", "<b/> => y := \"2\";"}}));
}

TEST(DslParserTest, TermSyntax) {
  EXPECT_EQ(ParseTerm("pub(\"T\",$X)"),
            Term::Functor("pub", {Term::Str("T"), Term::Var("X")}));
  EXPECT_EQ(ParseTerm("f(g(),'s')"),
            Term::Functor("f", {Term::Functor("g"), Term::Str("s")}));
}

TEST(DslParserTest, AssertedSignatures) {
  auto sigs = AssertedSignatures(Fixture());
  EXPECT_EQ(sigs, (std::vector<std::pair<std::string, std::size_t>>{
                      {"personne", 3}, {"pub", 2}}));
}

}  // namespace
}  // namespace semlint
