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

#ifndef SEMLINT_MATCHER_H_
#define SEMLINT_MATCHER_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semlint/dsl.h"
#include "semlint/term.h"
#include "semlint/xml.h"

namespace semlint {

// What a logical variable (or a local-environment name) can denote.
class Value {
 public:
  using Storage = std::variant<std::string, XmlNodePtr, XmlNodeList, Term>;

  static Value Str(std::string s) { return Value(Storage(std::move(s))); }
  static Value Node(XmlNodePtr n) { return Value(Storage(std::move(n))); }
  static Value Nodes(XmlNodeList ns) { return Value(Storage(std::move(ns))); }
  // A string term collapses to Str so there is one representation per string.
  static Value OfTerm(Term t);

  bool is_string() const { return data_.index() == 0; }
  bool is_node() const { return data_.index() == 1; }
  bool is_node_list() const { return data_.index() == 2; }
  bool is_term() const { return data_.index() == 3; }
  bool is_structural() const { return is_node() || is_node_list(); }

  const std::string& str() const { return std::get<std::string>(data_); }
  const XmlNodePtr& node() const { return std::get<XmlNodePtr>(data_); }
  const XmlNodeList& nodes() const { return std::get<XmlNodeList>(data_); }
  const Term& term() const { return std::get<Term>(data_); }

 private:
  explicit Value(Storage s) : data_(std::move(s)) {}
  Storage data_;
};

// Collapses whitespace runs to one space and trims both ends.
std::string NormalizeSpace(std::string_view s);

// Flattened text content of a node in document order, whitespace-normalized.
std::string Project(const XmlNode& node);
// Strings project to themselves, terms to their canonical text.
std::string Project(const Value& v);

// Converts a value to a ground term: structural values become Str of their
// projection.
Term ValueToTerm(const Value& v);

// Substitution from variable names to values. Extension returns a new map;
// an existing entry is never changed.
class Bindings {
 public:
  using Map = std::map<std::string, Value, std::less<>>;

  Bindings() = default;

  const Value* Find(std::string_view name) const;
  bool Has(std::string_view name) const { return Find(name) != nullptr; }
  std::size_t size() const { return map_.size(); }
  const Map& entries() const { return map_; }

  // Requires `name` to be unbound.
  Bindings With(std::string name, Value v) const;

  // Restriction to the given names (missing names are skipped).
  Bindings Only(std::span<const std::string> names) const;

 private:
  Map map_;
};

// Bindings holding $SourceFile and $SourceLine for `pos`.
Bindings PositionBindings(const SourcePos& pos);

// Matches one pattern against one node. Attributes are matched as an
// order-insensitive subset; children positionally (see MatchChildren).
std::optional<Bindings> MatchNode(const Pattern& p, const XmlNodePtr& n,
                                  const Bindings& b);

// Positional child matching. Every pattern takes exactly one node except a
// final variable (named or anonymous), which takes the remaining, possibly
// empty, tail as a node list.
std::optional<Bindings> MatchChildren(std::span<const Pattern> ps,
                                      std::span<const XmlNodePtr> ns,
                                      const Bindings& b);

// One solution per node of the subtree(s) under `root`, roots included,
// in document order. Throws Error(kTypeMismatch) unless `root` is a node
// or a node list.
std::vector<Bindings> DeepContains(const Value& root, const Pattern& p,
                                   const Bindings& b);

// Syntactic unification without occurs check. Variables already bound in
// `b` stand for their values.
std::optional<Bindings> Unify(const Term& a, const Term& c, const Bindings& b);

// Unifies a value with a term.
std::optional<Bindings> UnifyValue(const Value& v, const Term& t,
                                   const Bindings& b);

// Replaces bound variables by their values (structural values projected to
// strings). Unbound variables are left in place.
Term Substitute(const Term& t, const Bindings& b);

}  // namespace semlint

#endif  // SEMLINT_MATCHER_H_
