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

#include "semlint/builtins.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "gtest/gtest.h"
#include "semlint/dsl.h"
#include "semlint/error.h"
#include "semlint/fact_store.h"
#include "test_util.h"

namespace semlint {
namespace {

using ::semlint::testing::BlackHole;
using ::semlint::testing::StubServer;
using namespace std::chrono_literals;

std::vector<Bindings> Call(const BuiltinRegistry& reg, const std::string& goal,
                           const FactStore& store = FactStore()) {
  Term t = ParseTerm(goal);
  const BuiltinFn* fn = reg.Find(t.name, t.arity());
  if (fn == nullptr) throw std::runtime_error("no builtin " + t.name);
  return (*fn)(t.args, Bindings(), store);
}

BuiltinRegistry Offline() { return StandardBuiltins({.offline = true}, nullptr); }

TEST(BuiltinsTest, SameYear) {
  EXPECT_TRUE(SameYear("2002", "2002"));
  EXPECT_FALSE(SameYear("2000", "2001"));
  EXPECT_TRUE(SameYear(" 2002", "2002"));
  EXPECT_TRUE(SameYear("02002", "2002"));
  EXPECT_TRUE(SameYear("n.d.", " n.d. "));
  EXPECT_FALSE(SameYear("2002a", "2002"));
  EXPECT_EQ(Call(Offline(), R"(sameyear("2002","2002"))").size(), 1u);
  EXPECT_TRUE(Call(Offline(), R"(sameyear("2000","2001"))").empty());
}

TEST(BuiltinsTest, UnboundArgumentIsAnInstantiationError) {
  for (const char* goal : {"sameyear($A,\"2002\")", "personne1(\"A\",$N,\"p\")",
                           "pubbyotherproject($T,\"p\",$O)",
                           "testurl($U,$A,$B)"}) {
    try {
      Call(Offline(), goal);
      ADD_FAILURE() << "accepted " << goal;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInstantiation) << goal;
    }
  }
}

TEST(BuiltinsTest, FoldName) {
  EXPECT_EQ(FoldName("Dupónt"), "dupont");
  EXPECT_EQ(FoldName("Zoé ÉLÈVE"), "zoe eleve");
  // Decomposed accent: e + combining acute.
  EXPECT_EQ(FoldName("Ze\xCC\x81"), "ze");
  EXPECT_EQ(FoldName("d'Aquin"), "d'aquin");
}

TEST(BuiltinsTest, Personne1) {
  FactStore store;
  store.Add(ParseTerm(R"(personne("Jean","Dupont","axis"))"));
  BuiltinRegistry strict = Offline();
  EXPECT_EQ(Call(strict, R"(personne1("Jean","Dupont","axis"))", store).size(),
            1u);
  EXPECT_TRUE(Call(strict, R"(personne1("Jean","Dupónt","axis"))", store).empty());
  EXPECT_TRUE(Call(strict, R"(personne1("Jean","Dupont","wam"))", store).empty());
  BuiltinRegistry folded =
      StandardBuiltins({.offline = true, .normalize_names = true}, nullptr);
  EXPECT_EQ(Call(folded, R"(personne1("jean","Dupónt","axis"))", store).size(),
            1u);
}

TEST(BuiltinsTest, PubByOtherProject) {
  FactStore store;
  store.Add(ParseTerm(R"(pub("T","acacia"))"));
  store.Add(ParseTerm(R"(pub("T","orpailleur"))"));
  store.Add(ParseTerm(R"(pub("U","acacia"))"));
  auto sols = Call(Offline(), R"(pubbyotherproject("T","acacia",$O))", store);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].Find("O")->str(), "orpailleur");
  EXPECT_TRUE(
      Call(Offline(), R"(pubbyotherproject("U","acacia",$O))", store).empty());
  store.Add(ParseTerm(R"(pub("T","wam"))"));
  sols = Call(Offline(), R"(pubbyotherproject("T","acacia",$O))", store);
  ASSERT_EQ(sols.size(), 2u);
  EXPECT_EQ(sols[0].Find("O")->str(), "orpailleur");
  EXPECT_EQ(sols[1].Find("O")->str(), "wam");
}

TEST(BuiltinsTest, TestUrlOfflineNeverProbes) {
  EXPECT_TRUE(Call(Offline(), R"(testurl("http://127.0.0.1:1/x",$A,$B))").empty());
  EXPECT_TRUE(Call(Offline(), R"(testurl("not a url",$A,$B))").empty());
}

TEST(BuiltinsTest, IsAbsoluteHttpUrl) {
  EXPECT_TRUE(IsAbsoluteHttpUrl("http://example.org"));
  EXPECT_TRUE(IsAbsoluteHttpUrl("https://example.org/a?b#c"));
  EXPECT_FALSE(IsAbsoluteHttpUrl("ftp://example.org"));
  EXPECT_FALSE(IsAbsoluteHttpUrl("example.org/x"));
  EXPECT_FALSE(IsAbsoluteHttpUrl("http://"));
}

class HttpTest : public ::testing::Test {
 protected:
  BuiltinRegistry Online(std::chrono::milliseconds timeout = 2s) {
    return StandardBuiltins(
        {}, std::make_shared<MemoizingProber>(
                std::make_shared<HttpUrlProber>(timeout), 4));
  }
  StubServer stub_;
};

TEST_F(HttpTest, DeadUrlIsOneSolution) {
  std::string url = stub_.base_url() + "/dead/x";
  auto sols = Call(Online(), "testurl(\"" + url + "\",$A,$B)");
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(sols[0].Find("A")->str(), url + ":");
  EXPECT_EQ(sols[0].Find("B")->str(), "ERROR 404: Not Found");
}

TEST_F(HttpTest, LiveUrlIsSilent) {
  EXPECT_TRUE(Call(Online(), "testurl(\"" + stub_.base_url() +
                                 "/ok/x\",$A,$B)")
                  .empty());
  // HEAD rejected with 405, GET fallback succeeds.
  EXPECT_TRUE(Call(Online(), "testurl(\"" + stub_.base_url() +
                                 "/nohead/x\",$A,$B)")
                  .empty());
}

TEST_F(HttpTest, MalformedUrlReported) {
  auto sols = Call(Online(), R"(testurl("www.example.org",$A,$B))");
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_NE(sols[0].Find("B")->str().find("malformed URL"), std::string::npos);
}

TEST(HttpProberTest, RefusedConnection) {
  // Bind then release a port so nothing listens there.
  std::string url;
  {
    BlackHole hole;
    url = hole.base_url() + "/x";
  }
  HttpUrlProber prober(2s);
  UrlProbeResult r = prober.Probe(url);
  EXPECT_TRUE(r.dead());
  EXPECT_EQ(r.outcome, UrlProbeResult::Outcome::kUnreachable);
  EXPECT_EQ(DescribeDeadUrl(r).first, "No answer or time out,");
}

TEST(HttpProberTest, ServerThatNeverAnswersTimesOut) {
  BlackHole hole;
  HttpUrlProber prober(300ms);
  auto start = std::chrono::steady_clock::now();
  UrlProbeResult r = prober.Probe(hole.base_url() + "/x");
  auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_TRUE(r.dead());
  EXPECT_EQ(r.outcome, UrlProbeResult::Outcome::kTimeout);
  EXPECT_LT(elapsed, 5s);
  auto [a1, a2] = DescribeDeadUrl(r);
  EXPECT_EQ(a1, "No answer or time out,");
  EXPECT_NE(a2.find("the server seems to be down"), std::string::npos);
}

// Counts calls and the peak number running at once.
class CountingProber : public UrlProber {
 public:
  UrlProbeResult Probe(const std::string& url) override {
    int now = ++running_;
    int peak = peak_.load();
    while (now > peak && !peak_.compare_exchange_weak(peak, now)) {
    }
    std::this_thread::sleep_for(20ms);
    --running_;
    ++calls_;
    UrlProbeResult r;
    r.url = url;
    return r;
  }
  int calls() const { return calls_.load(); }
  int peak() const { return peak_.load(); }

 private:
  std::atomic<int> running_{0};
  std::atomic<int> peak_{0};
  std::atomic<int> calls_{0};
};

TEST(MemoizingProberTest, OneProbePerUrl) {
  auto inner = std::make_shared<CountingProber>();
  MemoizingProber memo(inner, 8);
  std::vector<std::jthread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] {
      for (int k = 0; k < 5; ++k) memo.Probe("http://a/x");
    });
  }
  threads.clear();
  EXPECT_EQ(inner->calls(), 1);
  EXPECT_EQ(memo.probe_count(), 1u);
}

TEST(MemoizingProberTest, PrefetchIsBounded) {
  auto inner = std::make_shared<CountingProber>();
  MemoizingProber memo(inner, 3);
  std::vector<std::string> urls;
  for (int i = 0; i < 12; ++i) urls.push_back("http://a/" + std::to_string(i));
  memo.Prefetch(urls);
  EXPECT_EQ(inner->calls(), 12);
  EXPECT_LE(inner->peak(), 3);
  memo.Prefetch(urls);
  for (const std::string& u : urls) memo.Probe(u);
  EXPECT_EQ(inner->calls(), 12);
}

TEST_F(HttpTest, RepeatedTestsProbeOnce) {
  BuiltinRegistry reg = Online();
  std::string goal = "testurl(\"" + stub_.base_url() + "/dead/y\",$A,$B)";
  for (int i = 0; i < 5; ++i) EXPECT_EQ(Call(reg, goal).size(), 1u);
  EXPECT_EQ(stub_.requests(), 1u);
}

}  // namespace
}  // namespace semlint
