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
#include <set>
#include <string>
#include <utility>

#include "semlint/error.h"

namespace semlint {

const Value* LocalEnv::Lookup(std::string_view name) const {
  for (const Frame* f = top_.get(); f != nullptr; f = f->parent.get()) {
    auto it = f->vars.find(name);
    if (it != f->vars.end()) return &it->second;
  }
  return nullptr;
}

LocalEnv LocalEnv::Extend(
    std::map<std::string, Value, std::less<>> assignments) const {
  if (assignments.empty()) return *this;
  LocalEnv out;
  out.top_ = std::make_shared<const Frame>(Frame{top_, std::move(assignments)});
  return out;
}

namespace {

void PatternVarNames(const Pattern& p, std::vector<std::string>& out) {
  auto add = [&](const std::string& n) {
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  };
  if (p.kind == Pattern::Kind::kVar) add(p.name);
  for (const AttrPattern& a : p.attrs) {
    if (a.value_kind == AttrPattern::ValueKind::kVar) add(a.value);
  }
  for (const Pattern& c : p.children) PatternVarNames(c, out);
}

std::vector<std::string> ConsequenceVars(const Consequence& c) {
  std::vector<std::string> out;
  if (const auto* t = std::get_if<Term>(&c)) {
    CollectVars(*t, out);
  } else {
    PatternVarNames(std::get<Pattern>(c), out);
  }
  return out;
}

// `contains` keeps only the first solution in document order.
std::optional<Bindings> FirstContainsSolution(const Value& root,
                                              const Pattern& p,
                                              const Bindings& b) {
  std::vector<Bindings> all = DeepContains(root, p, b);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

std::optional<Bindings> ApplyConditions(const Rule& rule, Bindings b,
                                        const LocalEnv& env) {
  for (const Condition& c : rule.conditions) {
    std::optional<Bindings> next;
    if (const auto* eq = std::get_if<EqCondition>(&c)) {
      const Value* v = env.Lookup(eq->env_var);
      if (v == nullptr) return std::nullopt;
      next = UnifyValue(*v, eq->rhs, b);
    } else {
      const auto& contains = std::get<ContainsCondition>(c);
      const Value* root = b.Find(contains.var);
      if (root == nullptr) return std::nullopt;
      next = FirstContainsSolution(*root, contains.pattern, b);
    }
    if (!next) return std::nullopt;
    b = std::move(*next);
  }
  return b;
}

class Evaluator {
 public:
  Evaluator(const RuleSet& rules, const std::string& file,
            const EvaluateOptions& options, PassOneResult& out)
      : rules_(rules), file_(file), options_(options), out_(out) {}

  void Visit(const XmlNodePtr& n, const LocalEnv& env) {
    SourcePos pos{file_, n->pos.line};
    Bindings base = PositionBindings(pos);

    struct Applicable {
      const Rule* rule;
      Bindings bindings;
    };
    std::vector<Applicable> applicable;
    for (const Rule& rule : rules_.rules) {
      if (rule.skipped) continue;
      std::optional<Bindings> b = MatchNode(rule.pattern, n, base);
      if (!b) continue;
      b = ApplyConditions(rule, std::move(*b), env);
      if (b) applicable.push_back({&rule, std::move(*b)});
    }
    if (options_.on_applicable) {
      std::vector<std::size_t> indices;
      for (const Applicable& a : applicable) indices.push_back(a.rule->index);
      options_.on_applicable(*n, indices);
    }

    // Every applicable rule saw `env`; assignments only reach the children.
    std::map<std::string, Value, std::less<>> assigned;
    std::map<std::string, std::size_t, std::less<>> assigned_by;
    for (const Applicable& a : applicable) {
      const Rule& rule = *a.rule;
      if (rule.is_test()) {
        Capture(rule, a.bindings, pos);
        continue;
      }
      for (const Action& action : rule.actions()) {
        if (const auto* as = std::get_if<AssertAction>(&action)) {
          Term fact = Substitute(as->fact, a.bindings);
          if (!fact.IsGround()) {
            throw Error(ErrorKind::kNonGroundAssertion, pos,
                        "rule " + std::to_string(rule.index) + " asserts " +
                            ToCanonical(fact));
          }
          out_.facts.push_back({std::move(fact), pos});
          continue;
        }
        const auto& assign = std::get<AssignAction>(action);
        Value v = Evaluate(assign.value, a.bindings, pos, rule);
        auto prev = assigned_by.find(assign.env_var);
        if (prev != assigned_by.end()) {
          out_.diagnostics.push_back(
              {Diagnostic::Severity::kWarning, pos, "assignment-conflict",
               "rules " + std::to_string(prev->second) + " and " +
                   std::to_string(rule.index) + " both assign '" +
                   assign.env_var + "' at this node; the value from rule " +
                   std::to_string(rule.index) + " is used"});
          prev->second = rule.index;
        } else {
          assigned_by.emplace(assign.env_var, rule.index);
        }
        assigned.insert_or_assign(assign.env_var, std::move(v));
      }
    }

    if (!n->is_element()) return;
    LocalEnv child_env = env.Extend(std::move(assigned));
    for (const XmlNodePtr& c : n->children) Visit(c, child_env);
  }

 private:
  // Assigned values keep node structure; terms are grounded.
  Value Evaluate(const Term& t, const Bindings& b, const SourcePos& pos,
                 const Rule& rule) {
    if (t.is_var()) {
      const Value* v = b.Find(t.name);
      if (v != nullptr && !(v->is_term() && v->term().is_var())) return *v;
    }
    Term ground = Substitute(t, b);
    if (!ground.IsGround()) {
      throw Error(ErrorKind::kNonGroundAssertion, pos,
                  "rule " + std::to_string(rule.index) + " assigns " +
                      ToCanonical(ground));
    }
    return Value::OfTerm(std::move(ground));
  }

  void Capture(const Rule& rule, const Bindings& b, const SourcePos& pos) {
    const Test& test = rule.test();
    std::vector<std::string> names;
    CollectVars(test.goal, names);
    for (std::string& n : ConsequenceVars(test.consequence)) {
      if (std::find(names.begin(), names.end(), n) == names.end()) {
        names.push_back(std::move(n));
      }
    }
    Bindings captured = PositionBindings(pos);
    for (const std::string& n : names) {
      if (captured.Has(n) || !b.Has(n)) continue;
      Term v = Substitute(Term::Var(n), b);
      if (!v.IsGround()) continue;
      captured = captured.With(n, Value::OfTerm(std::move(v)));
    }
    out_.tests.push_back({rule.index, test.polarity, test.goal,
                          std::move(captured), test.consequence, pos});
  }

  const RuleSet& rules_;
  const std::string& file_;
  const EvaluateOptions& options_;
  PassOneResult& out_;
};

std::string SolutionKey(const Bindings& solution, const Bindings& captured) {
  Term key = Term::Functor("bindings");
  for (const auto& [name, value] : solution.entries()) {
    if (captured.Has(name)) continue;
    Term v = Substitute(Term::Var(name), solution);
    key.args.push_back(Term::Functor("b", {Term::Str(name), std::move(v)}));
  }
  return ToCanonical(key);
}

}  // namespace

PassOneResult EvaluateFile(const XmlNodePtr& doc, const RuleSet& rules,
                           const std::string& file,
                           const EvaluateOptions& options) {
  PassOneResult out;
  out.source_file = file;
  out.rules_digest = rules.source_hash;
  Evaluator(rules, file, options, out).Visit(doc, LocalEnv());
  return out;
}

FactStore MergeFacts(std::span<const PassOneResult> results) {
  FactStore store;
  for (const PassOneResult& r : results) {
    for (const Fact& f : r.facts) store.Add(f.term);
  }
  return store;
}

std::set<std::string, std::less<>> AssertedNames(const RuleSet& rules) {
  std::set<std::string, std::less<>> out;
  for (auto& [name, arity] : AssertedSignatures(rules)) out.insert(name);
  return out;
}

std::vector<Bindings> Solve(
    const Term& goal, const Bindings& b, const FactStore& store,
    const BuiltinRegistry& builtins,
    const std::set<std::string, std::less<>>& asserted_names) {
  if (const BuiltinFn* fn = builtins.Find(goal.name, goal.arity())) {
    return (*fn)(goal.args, b, store);
  }
  const std::set<Term>& facts = store.Lookup(goal.name, goal.arity());
  if (facts.empty() && !asserted_names.contains(goal.name) &&
      !store.HasName(goal.name)) {
    throw Error(ErrorKind::kUnknownPredicate,
                goal.name + "/" + std::to_string(goal.arity()) +
                    " is neither a builtin nor asserted by any rule");
  }
  std::vector<Bindings> out;
  for (const Term& f : facts) {
    if (auto s = Unify(goal, f, b)) out.push_back(std::move(*s));
  }
  return out;
}

Resolution ResolveTests(
    std::span<const DelayedTest> tests, const FactStore& store,
    const BuiltinRegistry& builtins,
    const std::set<std::string, std::less<>>& asserted_names) {
  Resolution out;
  std::set<std::string> reported;
  auto report_once = [&](const std::string& key, const DelayedTest& t,
                         const Error& e) {
    if (!reported.insert(key).second) return;
    Diagnostic d = Diagnostic::FromError(e);
    d.pos = t.pos;
    out.diagnostics.push_back(std::move(d));
  };

  for (const DelayedTest& t : tests) {
    std::vector<Bindings> solutions;
    try {
      solutions = Solve(t.goal, t.captured, store, builtins, asserted_names);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kUnknownPredicate) {
        report_once("unknown:" + t.goal.name, t, e);
      } else {
        report_once(std::string(ErrorKindName(e.kind())) + ":" +
                        std::to_string(t.rule_index),
                    t, e);
      }
      continue;
    }
    try {
      if (t.polarity == Polarity::kIfAbsent) {
        if (!solutions.empty()) continue;
        Rendered r = RenderConsequence(t.consequence, t.captured);
        out.messages.push_back(
            {t.pos, t.rule_index, std::move(r.html), std::move(r.text), ""});
        continue;
      }
      std::set<std::pair<std::string, std::string>> seen;
      for (const Bindings& s : solutions) {
        Rendered r = RenderConsequence(t.consequence, s);
        if (!seen.emplace(r.html, r.text).second) continue;
        out.messages.push_back({t.pos, t.rule_index, std::move(r.html),
                                std::move(r.text), SolutionKey(s, t.captured)});
      }
    } catch (const Error& e) {
      report_once(std::string(ErrorKindName(e.kind())) + ":" +
                      std::to_string(t.rule_index),
                  t, e);
    }
  }
  return out;
}

std::vector<std::string> CollectProbeUrls(std::span<const DelayedTest> tests) {
  std::set<std::string> urls;
  for (const DelayedTest& t : tests) {
    if (t.goal.name != "testurl" || t.goal.arity() != 3) continue;
    Term u = Substitute(t.goal.args[0], t.captured);
    if (u.is_str() && IsAbsoluteHttpUrl(u.name)) urls.insert(u.name);
  }
  return {urls.begin(), urls.end()};
}

}  // namespace semlint
