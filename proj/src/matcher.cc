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

#include "semlint/matcher.h"

#include <cassert>
#include <string>
#include <utility>
#include <variant>

#include "semlint/error.h"

namespace semlint {

Value Value::OfTerm(Term t) {
  if (t.is_str()) return Str(std::move(t.name));
  return Value(Storage(std::move(t)));
}

namespace {

bool IsBlank(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsBlank(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsBlank(s.back())) s.remove_suffix(1);
  return s;
}

void CollectText(const XmlNode& n, std::string& out) {
  if (n.is_text()) {
    out += ' ';
    out += n.text;
    return;
  }
  for (const XmlNodePtr& c : n.children) CollectText(*c, out);
}

}  // namespace

std::string NormalizeSpace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (IsBlank(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::string Project(const XmlNode& node) {
  std::string raw;
  CollectText(node, raw);
  return NormalizeSpace(raw);
}

std::string Project(const Value& v) {
  if (v.is_string()) return v.str();
  if (v.is_node()) return Project(*v.node());
  if (v.is_term()) return ToCanonical(v.term());
  std::string raw;
  for (const XmlNodePtr& n : v.nodes()) CollectText(*n, raw);
  return NormalizeSpace(raw);
}

Term ValueToTerm(const Value& v) {
  if (v.is_term()) return v.term();
  return Term::Str(Project(v));
}

const Value* Bindings::Find(std::string_view name) const {
  auto it = map_.find(name);
  return it == map_.end() ? nullptr : &it->second;
}

Bindings Bindings::With(std::string name, Value v) const {
  assert(!Has(name));
  Bindings out = *this;
  out.map_.emplace(std::move(name), std::move(v));
  return out;
}

Bindings Bindings::Only(std::span<const std::string> names) const {
  Bindings out;
  for (const std::string& n : names) {
    if (const Value* v = Find(n)) out.map_.emplace(n, *v);
  }
  return out;
}

Bindings PositionBindings(const SourcePos& pos) {
  return Bindings()
      .With(std::string(kSourceFileVar), Value::Str(pos.file))
      .With(std::string(kSourceLineVar), Value::Str(std::to_string(pos.line)));
}

namespace {

struct Unbound {
  std::string name;
};

using Item = std::variant<Unbound, Value>;

// Follows variable bindings, including variable-to-variable aliases, until
// an unbound variable or a non-variable value is reached.
Item Deref(const Term& t, const Bindings& b) {
  const Term* cur = &t;
  for (;;) {
    if (!cur->is_var()) return Value::OfTerm(*cur);
    const Value* v = b.Find(cur->name);
    if (v == nullptr) return Unbound{cur->name};
    if (v->is_term() && v->term().is_var()) {
      cur = &v->term();
      continue;
    }
    return *v;
  }
}

Item DerefValue(const Value& v, const Bindings& b) {
  if (v.is_term() && v.term().is_var()) return Deref(v.term(), b);
  return v;
}

std::optional<Bindings> UnifyValues(const Value& x, const Value& y,
                                    const Bindings& b);

std::optional<Bindings> UnifyItems(const Item& a, const Item& c,
                                   const Bindings& b) {
  const auto* ua = std::get_if<Unbound>(&a);
  const auto* uc = std::get_if<Unbound>(&c);
  if (ua && uc) {
    if (ua->name == uc->name) return b;
    return b.With(ua->name, Value::OfTerm(Term::Var(uc->name)));
  }
  if (ua) return b.With(ua->name, std::get<Value>(c));
  if (uc) return b.With(uc->name, std::get<Value>(a));
  return UnifyValues(std::get<Value>(a), std::get<Value>(c), b);
}

bool SameNodes(const XmlNodeList& x, const XmlNodeList& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!SameTree(*x[i], *y[i])) return false;
  }
  return true;
}

std::optional<Bindings> UnifyValues(const Value& x, const Value& y,
                                    const Bindings& b) {
  if (x.is_term() && y.is_term()) {
    const Term& tx = x.term();
    const Term& ty = y.term();
    if (tx.name != ty.name || tx.arity() != ty.arity()) return std::nullopt;
    std::optional<Bindings> cur = b;
    for (std::size_t i = 0; i < tx.arity() && cur; ++i) {
      cur = Unify(tx.args[i], ty.args[i], *cur);
    }
    return cur;
  }
  if (x.is_string() && y.is_string()) {
    if (x.str() == y.str()) return b;
    return std::nullopt;
  }
  if (x.is_string() && y.is_structural()) {
    if (x.str() == Project(y)) return b;
    return std::nullopt;
  }
  if (y.is_string() && x.is_structural()) {
    if (y.str() == Project(x)) return b;
    return std::nullopt;
  }
  if (x.is_node() && y.is_node()) {
    if (SameTree(*x.node(), *y.node())) return b;
    return std::nullopt;
  }
  if (x.is_node_list() && y.is_node_list()) {
    if (SameNodes(x.nodes(), y.nodes())) return b;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Bindings> BindOrCheck(const std::string& name, Value v,
                                    const Bindings& b) {
  return UnifyItems(Deref(Term::Var(name), b), Item(std::move(v)), b);
}

}  // namespace

std::optional<Bindings> Unify(const Term& a, const Term& c, const Bindings& b) {
  return UnifyItems(Deref(a, b), Deref(c, b), b);
}

std::optional<Bindings> UnifyValue(const Value& v, const Term& t,
                                   const Bindings& b) {
  return UnifyItems(DerefValue(v, b), Deref(t, b), b);
}

std::optional<Bindings> MatchNode(const Pattern& p, const XmlNodePtr& n,
                                  const Bindings& b) {
  switch (p.kind) {
    case Pattern::Kind::kVar:
      return BindOrCheck(p.name, Value::Node(n), b);
    case Pattern::Kind::kAnon:
      return b;
    case Pattern::Kind::kText:
      if (n->is_text() && Trim(n->text) == Trim(p.text)) return b;
      return std::nullopt;
    case Pattern::Kind::kElem:
    case Pattern::Kind::kEmptyElem:
      break;
  }
  if (!n->is_element() || n->name != p.name) return std::nullopt;
  std::optional<Bindings> cur = b;
  for (const AttrPattern& ap : p.attrs) {
    const std::string* value = n->FindAttr(ap.name);
    if (value == nullptr) return std::nullopt;
    switch (ap.value_kind) {
      case AttrPattern::ValueKind::kStr:
        if (*value != ap.value) return std::nullopt;
        break;
      case AttrPattern::ValueKind::kVar:
        cur = BindOrCheck(ap.value, Value::Str(*value), *cur);
        if (!cur) return std::nullopt;
        break;
      case AttrPattern::ValueKind::kAnon:
        break;
    }
  }
  return MatchChildren(p.children, n->children, *cur);
}

std::optional<Bindings> MatchChildren(std::span<const Pattern> ps,
                                      std::span<const XmlNodePtr> ns,
                                      const Bindings& b) {
  if (ps.empty()) {
    if (ns.empty()) return b;
    return std::nullopt;
  }
  const Pattern& last = ps.back();
  std::size_t fixed = last.is_variable() ? ps.size() - 1 : ps.size();
  if (last.is_variable() ? ns.size() < fixed : ns.size() != fixed) {
    return std::nullopt;
  }
  std::optional<Bindings> cur = b;
  for (std::size_t i = 0; i < fixed && cur; ++i) {
    cur = MatchNode(ps[i], ns[i], *cur);
  }
  if (!cur || !last.is_variable()) return cur;
  if (last.kind == Pattern::Kind::kAnon) return cur;
  return BindOrCheck(last.name,
                     Value::Nodes(XmlNodeList(ns.begin() + fixed, ns.end())),
                     *cur);
}

namespace {

void ContainsWalk(const XmlNodePtr& n, const Pattern& p, const Bindings& b,
                  std::vector<Bindings>& out) {
  if (auto r = MatchNode(p, n, b)) out.push_back(std::move(*r));
  if (n->is_element()) {
    for (const XmlNodePtr& c : n->children) ContainsWalk(c, p, b, out);
  }
}

}  // namespace

std::vector<Bindings> DeepContains(const Value& root, const Pattern& p,
                                   const Bindings& b) {
  std::vector<Bindings> out;
  if (root.is_node()) {
    ContainsWalk(root.node(), p, b, out);
  } else if (root.is_node_list()) {
    for (const XmlNodePtr& n : root.nodes()) ContainsWalk(n, p, b, out);
  } else {
    throw Error(ErrorKind::kTypeMismatch,
                "contains needs an element or element list, got the string \"" +
                    Project(root) + "\"");
  }
  return out;
}

Term Substitute(const Term& t, const Bindings& b) {
  if (t.is_var()) {
    Item it = Deref(t, b);
    if (const auto* u = std::get_if<Unbound>(&it)) return Term::Var(u->name);
    const Value& v = std::get<Value>(it);
    if (v.is_term()) return Substitute(v.term(), b);
    return ValueToTerm(v);
  }
  if (t.is_str()) return t;
  Term out = Term::Functor(t.name);
  out.args.reserve(t.args.size());
  for (const Term& a : t.args) out.args.push_back(Substitute(a, b));
  return out;
}

}  // namespace semlint
