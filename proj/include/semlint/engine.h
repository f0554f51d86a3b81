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

#ifndef SEMLINT_ENGINE_H_
#define SEMLINT_ENGINE_H_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semlint/builtins.h"
#include "semlint/diagnostic.h"
#include "semlint/dsl.h"
#include "semlint/fact_store.h"
#include "semlint/matcher.h"
#include "semlint/report.h"
#include "semlint/xml.h"

namespace semlint {

// Name -> value map inherited down the tree. Extending creates a child
// scope; parents are never modified, so sibling subtrees cannot observe
// each other's assignments.
class LocalEnv {
 public:
  LocalEnv() = default;

  const Value* Lookup(std::string_view name) const;

  // New scope holding `assignments` on top of this one.
  LocalEnv Extend(std::map<std::string, Value, std::less<>> assignments) const;

 private:
  struct Frame {
    std::shared_ptr<const Frame> parent;
    std::map<std::string, Value, std::less<>> vars;
  };
  std::shared_ptr<const Frame> top_;
};

// A `?` test captured during the first pass, resolved in the second.
struct DelayedTest {
  std::size_t rule_index = 0;
  Polarity polarity = Polarity::kIfAbsent;
  Term goal;
  Bindings captured;  // string-projected; always has SourceFile/SourceLine
  Consequence consequence;
  SourcePos pos;
};

struct PassOneResult {
  std::string source_file;
  std::vector<Fact> facts;
  std::vector<DelayedTest> tests;
  std::vector<Diagnostic> diagnostics;
  std::string input_digest;
  std::string rules_digest;
};

struct EvaluateOptions {
  // Called at every visited node with the indices of the applicable rules.
  std::function<void(const XmlNode&, std::span<const std::size_t>)>
      on_applicable;
};

// First pass over one document: depth-first pre-order visit. At each node
// the applicable rules are selected against the inherited environment,
// then applied: assertions become facts, assignments form the environment
// of the node's children, tests are captured for the second pass.
//
// Throws Error(kNonGroundAssertion) when an asserted term keeps an unbound
// variable.
PassOneResult EvaluateFile(const XmlNodePtr& doc, const RuleSet& rules,
                           const std::string& file,
                           const EvaluateOptions& options = {});

FactStore MergeFacts(std::span<const PassOneResult> results);

// Names the ruleset can ever assert; used to tell a misspelt predicate from
// one that just has no facts.
std::set<std::string, std::less<>> AssertedNames(const RuleSet& rules);

// Resolves one goal against builtins, then stored facts.
//
// Throws Error(kUnknownPredicate) when no builtin matches, no stored fact
// has that signature and `asserted_names` does not contain the name.
std::vector<Bindings> Solve(const Term& goal, const Bindings& b,
                            const FactStore& store,
                            const BuiltinRegistry& builtins,
                            const std::set<std::string, std::less<>>&
                                asserted_names);

struct Resolution {
  std::vector<Message> messages;
  std::vector<Diagnostic> diagnostics;
};

// Second pass. IfAbsent tests report when the goal has no solution,
// IfPresent tests report once per distinct rendered solution. Ruleset
// problems (unknown predicates, unbound consequence variables, builtin
// instantiation errors) become diagnostics, each reported once.
Resolution ResolveTests(std::span<const DelayedTest> tests,
                        const FactStore& store,
                        const BuiltinRegistry& builtins,
                        const std::set<std::string, std::less<>>&
                            asserted_names);

// Every ground first argument of a testurl/3 goal, sorted and unique.
std::vector<std::string> CollectProbeUrls(std::span<const DelayedTest> tests);

}  // namespace semlint

#endif  // SEMLINT_ENGINE_H_
