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

#include "semlint/engine.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "semlint/builtins.h"
#include "semlint/dsl.h"
#include "semlint/error.h"
#include "semlint/fact_store.h"
#include "test_util.h"

namespace semlint {
namespace {

using ::semlint::testing::FixturePath;
using ::semlint::testing::ReadFile;
using ::semlint::testing::Xml;

RuleSet ActivityRules() {
  std::string path = FixturePath("activity_report.rules");
  return ParseRules(ReadFile(path), path);
}

std::set<std::string> FactSet(const PassOneResult& r) {
  std::set<std::string> out;
  for (const Fact& f : r.facts) out.insert(ToCanonical(f.term));
  return out;
}

std::set<std::string> StoreSet(const FactStore& store) {
  std::set<std::string> out;
  for (const auto& [sig, terms] : store.index()) {
    for (const Term& t : terms) out.insert(ToCanonical(t));
  }
  return out;
}

Resolution ResolveOffline(std::span<const PassOneResult> results,
                          const RuleSet& rules) {
  FactStore store = MergeFacts(results);
  std::vector<DelayedTest> tests;
  for (const PassOneResult& r : results) {
    tests.insert(tests.end(), r.tests.begin(), r.tests.end());
  }
  BuiltinRegistry builtins = StandardBuiltins({.offline = true}, nullptr);
  return ResolveTests(tests, store, builtins, AssertedNames(rules));
}

constexpr char kMinimalReport[] =
    "<raweb year=\"2002\">\n"
    "  <accueil><x/><y/><projet>axis</projet><z/></accueil>\n"
    "  <catperso>\n"
    "    <pers prenom=\"A\" nom=\"B\"><t/></pers>\n"
    "  </catperso>\n"
    "  <body>\n"
    "    <pers prenom=\"A\" nom=\"C\"><t/></pers>\n"
    "  </body>\n"
    "</raweb>\n";

TEST(EngineTest, DeclaredPersonBecomesFact) {
  PassOneResult r = EvaluateFile(Xml(kMinimalReport), ActivityRules(), "t.xml");
  EXPECT_EQ(FactSet(r),
            (std::set<std::string>{R"(personne("A","B","axis"))"}));
  EXPECT_TRUE(r.diagnostics.empty());
}

TEST(EngineTest, PersonOutsideCatalogueIsDelayed) {
  PassOneResult r = EvaluateFile(Xml(kMinimalReport), ActivityRules(), "t.xml");
  ASSERT_EQ(r.tests.size(), 1u);
  const DelayedTest& t = r.tests[0];
  EXPECT_EQ(t.rule_index, 4u);
  EXPECT_EQ(t.polarity, Polarity::kIfAbsent);
  EXPECT_EQ(t.pos.line, 7u);
  EXPECT_EQ(Substitute(t.goal, t.captured),
            ParseTerm(R"(personne1("A","C","axis"))"));
  EXPECT_EQ(t.captured.Find("SourceFile")->str(), "t.xml");
  EXPECT_EQ(t.captured.Find("SourceLine")->str(), "7");

  Resolution res = ResolveOffline(std::span(&r, 1), ActivityRules());
  ASSERT_EQ(res.messages.size(), 1u);
  EXPECT_NE(res.messages[0].text.find(
                "A C does not appear in the list of project's members"),
            std::string::npos)
      << res.messages[0].text;
}

TEST(EngineTest, EmptyRuleset) {
  PassOneResult r = EvaluateFile(Xml(kMinimalReport), RuleSet{}, "t.xml");
  EXPECT_TRUE(r.facts.empty());
  EXPECT_TRUE(r.tests.empty());
}

RuleSet ConflictRules() {
  return ParseRules(
      "<a><$_></a> => x := \"1\";\n"
      "<a><$_></a> => x := \"2\";\n"
      "<b/> & x = $V => saw($V);\n",
      "c.rules");
}

TEST(EngineTest, AssignmentConflictLaterRuleWins) {
  PassOneResult r = EvaluateFile(Xml("<r>\n<a><b/></a></r>"), ConflictRules(),
                                 "t.xml");
  EXPECT_EQ(FactSet(r), (std::set<std::string>{R"(saw("2"))"}));
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].severity, Diagnostic::Severity::kWarning);
  EXPECT_EQ(r.diagnostics[0].kind, "assignment-conflict");
  EXPECT_EQ(r.diagnostics[0].pos->line, 2u);
}

TEST(EngineTest, SameNodeRulesSeeTheSameEnvironment) {
  // The second rule must not observe the first rule's assignment.
  RuleSet rules = ParseRules(
      "<a/> => x := \"1\";\n"
      "<a/> & x = $V => saw($V);\n",
      "s.rules");
  PassOneResult r = EvaluateFile(Xml("<a/>"), rules, "t.xml");
  EXPECT_TRUE(r.facts.empty());
}

TEST(EngineTest, NonGroundAssertion) {
  // The parser refuses this rule, so build it by hand.
  Rule rule;
  rule.pattern = Pattern::EmptyElem("a", {});
  rule.body = std::vector<Action>{AssertAction{ParseTerm("f($Q)")}};
  RuleSet rules;
  rules.rules.push_back(rule);
  try {
    EvaluateFile(Xml("<r>\n<a/></r>"), rules, "t.xml");
    FAIL() << "expected NonGroundAssertion";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonGroundAssertion);
    EXPECT_EQ(e.pos().line, 2u);
  }
}

TEST(EngineTest, ContainsTakesFirstSolution) {
  RuleSet rules = ParseRules(
      "<c><$A></c> & $A contains <t><$T></t> => first($T);", "c.rules");
  PassOneResult r =
      EvaluateFile(Xml("<c><x><t>one</t></x><t>two</t></c>"), rules, "t.xml");
  EXPECT_EQ(FactSet(r), (std::set<std::string>{R"(first("one"))"}));
}

TEST(EngineTest, EnvironmentLocality) {
  // Paired fixtures: with and without the rule assigning x in a sibling.
  const char* doc =
      "<r><s><a/><q/></s><s><b/></s><a><b/></a></r>";
  RuleSet with = ParseRules(
      "<r><$_></r> => x := \"0\";\n"
      "<a/> => x := \"1\";\n"
      "<b/> & x = $V => saw($V);\n",
      "w.rules");
  RuleSet without = ParseRules(
      "<r><$_></r> => x := \"0\";\n"
      "<b/> & x = $V => saw($V);\n",
      "o.rules");
  EXPECT_EQ(FactSet(EvaluateFile(Xml(doc), with, "t.xml")),
            FactSet(EvaluateFile(Xml(doc), without, "t.xml")));
  // The `<a>` with content is not `<a/>`-shaped, so x stays "0" below it.
  EXPECT_EQ(FactSet(EvaluateFile(Xml(doc), with, "t.xml")),
            (std::set<std::string>{R"(saw("0"))"}));

  // An assignment is visible to the assigning node's own subtree.
  RuleSet deep = ParseRules(
      "<s><$_></s> => x := \"1\";\n"
      "<b/> & x = $V => saw($V);\n",
      "d.rules");
  EXPECT_EQ(FactSet(EvaluateFile(Xml("<r><s><b/></s><b/></r>"), deep, "t.xml")),
            (std::set<std::string>{R"(saw("1"))"}));
}

TEST(EngineTest, UnboundEnvNameFailsSilently) {
  RuleSet rules = ParseRules("<a/> & nope = $V => saw($V);", "u.rules");
  PassOneResult r = EvaluateFile(Xml("<a/>"), rules, "t.xml");
  EXPECT_TRUE(r.facts.empty());
  EXPECT_TRUE(r.diagnostics.empty());
}

TEST(EngineTest, TextHeadRule) {
  RuleSet rules = ParseRules("\"TODO\" => todo($SourceLine);", "x.rules");
  PassOneResult r =
      EvaluateFile(Xml("<a>\n<p>\nTODO\n</p><p>done</p></a>"), rules, "t.xml");
  EXPECT_EQ(FactSet(r), (std::set<std::string>{R"(todo("3"))"}));
}

TEST(EngineTest, MergeFacts) {
  EXPECT_TRUE(MergeFacts({}).empty());
  RuleSet rules = ParseRules("<t><$T></t> => pub($T,\"axis\");", "m.rules");
  std::vector<PassOneResult> rs = {
      EvaluateFile(Xml("<t>x</t>"), rules, "a.xml"),
      EvaluateFile(Xml("<t>x</t>"), rules, "b.xml")};
  FactStore store = MergeFacts(rs);
  EXPECT_EQ(store.size(), 1u);
  EXPECT_TRUE(store.Contains(ParseTerm(R"(pub("x","axis"))")));
}

std::vector<PassOneResult> TwoTeams(const RuleSet& rules,
                                    const std::string& variant) {
  std::vector<PassOneResult> out;
  for (const char* team : {"acacia", "orpailleur"}) {
    std::string path = FixturePath(variant + "/" + team + ".xml");
    out.push_back(
        EvaluateFile(ParseXml(ReadFile(path), path), rules, path));
  }
  return out;
}

TEST(EngineTest, MergeTwoTeams) {
  RuleSet rules = ActivityRules();
  std::vector<PassOneResult> rs = TwoTeams(rules, "seeded");
  FactStore store = MergeFacts(rs);
  const std::string title =
      "Three knowledge representation formalisms for content-based "
      "manipulation of documents";
  EXPECT_TRUE(store.Contains(
      Term::Functor("pub", {Term::Str(title), Term::Str("acacia")})));
  EXPECT_TRUE(store.Contains(
      Term::Functor("pub", {Term::Str(title), Term::Str("orpailleur")})));
  std::size_t shared = 0;
  for (const Term& t : store.Lookup("pub", 2)) shared += t.args[0].name == title;
  EXPECT_EQ(shared, 2u);
  // No facts lost: the store is the union of the inputs.
  std::set<std::string> unioned;
  for (const PassOneResult& r : rs) {
    std::set<std::string> s = FactSet(r);
    unioned.insert(s.begin(), s.end());
  }
  EXPECT_EQ(StoreSet(store), unioned);
  EXPECT_EQ(store.size(), unioned.size());
}

TEST(EngineTest, SolveExamples) {
  BuiltinRegistry builtins = StandardBuiltins({.offline = true}, nullptr);
  FactStore store;
  store.Add(ParseTerm(R"(personne("A","B","axis"))"));
  std::set<std::string, std::less<>> names = {"personne", "pub"};
  auto sols = Solve(ParseTerm(R"(personne("A",$N,"axis"))"), {}, store,
                    builtins, names);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].Find("N")->str(), "B");

  FactStore pubs;
  pubs.Add(ParseTerm(R"(pub("T","acacia"))"));
  pubs.Add(ParseTerm(R"(pub("T","orpailleur"))"));
  sols = Solve(ParseTerm(R"(pubbyotherproject("T","acacia",$O))"), {}, pubs,
               builtins, names);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].Find("O")->str(), "orpailleur");

  // Asserted somewhere but no facts this run: no solutions, no error.
  EXPECT_TRUE(Solve(ParseTerm(R"(pub($T,"x"))"), {}, FactStore(), builtins,
                    names)
                  .empty());

  try {
    Solve(ParseTerm(R"(persone("A"))"), {}, FactStore(), builtins, names);
    FAIL() << "expected UnknownPredicate";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnknownPredicate);
  }
}

DelayedTest MakeTest(Polarity polarity, const std::string& goal,
                     const std::string& template_rule) {
  RuleSet rs = ParseRules(template_rule, "t.rules");
  DelayedTest t;
  t.polarity = polarity;
  t.goal = ParseTerm(goal);
  t.captured = PositionBindings({"a.xml", 3});
  t.consequence = rs.rules[0].test().consequence;
  t.pos = {"a.xml", 3};
  return t;
}

TEST(EngineTest, ResolveTestsExamples) {
  BuiltinRegistry builtins = StandardBuiltins({.offline = true}, nullptr);
  std::set<std::string, std::less<>> names = {"pub"};

  DelayedTest same = MakeTest(Polarity::kIfAbsent, R"(sameyear("2000","2000"))",
                              "<a/> ? f() / <li>bad</li>;");
  EXPECT_TRUE(ResolveTests(std::span(&same, 1), FactStore(), builtins, names)
                  .messages.empty());

  FactStore three;
  three.Add(ParseTerm(R"(pub("T","acacia"))"));
  three.Add(ParseTerm(R"(pub("T","orpailleur"))"));
  three.Add(ParseTerm(R"(pub("T","wam"))"));
  DelayedTest coop = MakeTest(
      Polarity::kIfPresent, R"(pubbyotherproject("T","acacia",$O))",
      "<a/> ? f($O) -> <li>with <$O></li>;");
  Resolution res = ResolveTests(std::span(&coop, 1), three, builtins, names);
  ASSERT_EQ(res.messages.size(), 2u);
  EXPECT_EQ(res.messages[0].text, "with orpailleur");
  EXPECT_EQ(res.messages[1].text, "with wam");
  EXPECT_EQ(res.messages[0].pos, (SourcePos{"a.xml", 3}));
}

TEST(EngineTest, ResolveTestsReportsRulesetProblemsOnce) {
  BuiltinRegistry builtins = StandardBuiltins({.offline = true}, nullptr);
  std::vector<DelayedTest> tests(
      3, MakeTest(Polarity::kIfAbsent, R"(persone("A"))",
                  "<a/> ? f() / <li>x</li>;"));
  Resolution res = ResolveTests(tests, FactStore(), builtins, {});
  EXPECT_TRUE(res.messages.empty());
  ASSERT_EQ(res.diagnostics.size(), 1u);
  EXPECT_EQ(res.diagnostics[0].kind, "unknown-predicate");
  EXPECT_EQ(res.diagnostics[0].severity, Diagnostic::Severity::kError);

  std::vector<DelayedTest> unbound(
      2, MakeTest(Polarity::kIfAbsent, R"(sameyear("1","2"))",
                  "<a/> ? f($Q) / <li><$Q></li>;"));
  res = ResolveTests(unbound, FactStore(), builtins, {});
  ASSERT_EQ(res.diagnostics.size(), 1u);
  EXPECT_EQ(res.diagnostics[0].kind, "unbound-in-consequence");
}

TEST(EngineTest, RegistryClosureOnShippedRules) {
  RuleSet rules = ActivityRules();
  std::vector<PassOneResult> rs = TwoTeams(rules, "fixed");
  Resolution res = ResolveOffline(rs, rules);
  EXPECT_TRUE(res.diagnostics.empty());
  EXPECT_TRUE(res.messages.empty());
}

TEST(EngineTest, CollectProbeUrls) {
  RuleSet rules = ActivityRules();
  std::vector<DelayedTest> tests;
  for (const PassOneResult& r : TwoTeams(rules, "seeded")) {
    tests.insert(tests.end(), r.tests.begin(), r.tests.end());
  }
  std::vector<std::string> urls = CollectProbeUrls(tests);
  // The raw fixtures hold a placeholder that is not a URL yet.
  EXPECT_TRUE(urls.empty());
  tests.clear();
  ::semlint::testing::TempDir dir;
  for (const std::string& path : ::semlint::testing::WriteCorpus(
           "seeded", dir.path(), "http://h")) {
    PassOneResult r = EvaluateFile(ParseXml(ReadFile(path), path), rules, path);
    tests.insert(tests.end(), r.tests.begin(), r.tests.end());
  }
  EXPECT_EQ(CollectProbeUrls(tests),
            (std::vector<std::string>{
                "http://h/dead/iccs", "http://h/ok/corese", "http://h/ok/coron",
                "http://h/ok/ecai2002", "http://h/ok/ker2002"}));
}

// Applicable-rule sets per visited node, named by original rule index.
std::vector<std::set<std::size_t>> ApplicableSets(const XmlNodePtr& doc,
                                                  const RuleSet& rules,
                                                  const std::vector<std::size_t>&
                                                      original) {
  std::vector<std::set<std::size_t>> out;
  EvaluateOptions opts;
  opts.on_applicable = [&](const XmlNode&, std::span<const std::size_t> idx) {
    std::set<std::size_t> s;
    for (std::size_t i : idx) s.insert(original[i]);
    out.push_back(std::move(s));
  };
  EvaluateFile(doc, rules, "t.xml", opts);
  return out;
}

TEST(EnginePropertyTest, ApplicableSetsInvariantUnderRulePermutation) {
  RuleSet rules = ActivityRules();
  std::string path = FixturePath("seeded/acacia.xml");
  XmlNodePtr doc = ParseXml(ReadFile(path), path);
  std::vector<std::size_t> identity(rules.rules.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  auto expected = ApplicableSets(doc, rules, identity);

  std::mt19937 rng(23);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::size_t> order = identity;
    std::shuffle(order.begin(), order.end(), rng);
    RuleSet permuted;
    permuted.source_hash = rules.source_hash;
    for (std::size_t i = 0; i < order.size(); ++i) {
      Rule r = rules.rules[order[i]];
      r.index = i;
      permuted.rules.push_back(std::move(r));
    }
    ASSERT_EQ(ApplicableSets(doc, permuted, order), expected);
  }
}

TEST(EnginePropertyTest, AllSkippedRulesetIsInert) {
  std::string text = ReadFile(FixturePath("activity_report.rules"));
  // Prefix every rule with the skip marker: rules start after each `;`.
  std::string skipped = "<* ";
  for (std::size_t i = 0; i < text.size(); ++i) {
    skipped += text[i];
    if (text[i] == ';' && text.find('<', i) != std::string::npos) {
      skipped += " <* ";
    }
  }
  RuleSet rules = ParseRules(skipped, "skip.rules");
  ASSERT_EQ(rules.rules.size(), 11u);
  for (const Rule& r : rules.rules) ASSERT_TRUE(r.skipped);
  std::vector<PassOneResult> rs = TwoTeams(rules, "seeded");
  for (const PassOneResult& r : rs) {
    EXPECT_TRUE(r.facts.empty());
    EXPECT_TRUE(r.tests.empty());
  }
  EXPECT_TRUE(ResolveOffline(rs, rules).messages.empty());
}

TEST(EnginePropertyTest, FileOrderAndIndependence) {
  RuleSet rules = ActivityRules();
  std::vector<PassOneResult> forward = TwoTeams(rules, "seeded");
  std::vector<PassOneResult> backward(forward.rbegin(), forward.rend());
  EXPECT_EQ(StoreSet(MergeFacts(forward)), StoreSet(MergeFacts(backward)));
  std::vector<Message> m1 = ResolveOffline(forward, rules).messages;
  std::vector<Message> m2 = ResolveOffline(backward, rules).messages;
  std::sort(m1.begin(), m1.end());
  std::sort(m2.begin(), m2.end());
  EXPECT_EQ(m1.size(), 4u);
  EXPECT_TRUE(m1 == m2);
  // Evaluating a file alone gives the same pass-1 result as in a batch.
  std::string path = FixturePath("seeded/orpailleur.xml");
  PassOneResult alone = EvaluateFile(ParseXml(ReadFile(path), path), rules, path);
  EXPECT_EQ(FactSet(alone), FactSet(forward[1]));
  EXPECT_EQ(alone.tests.size(), forward[1].tests.size());
}

}  // namespace
}  // namespace semlint
