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

#include "semlint/fact_store.h"

namespace semlint {

bool FactStore::Add(Term term) {
  auto& bucket = index_[Signature(term.name, term.arity())];
  bool inserted = bucket.insert(std::move(term)).second;
  if (inserted) ++size_;
  return inserted;
}

bool FactStore::Contains(const Term& term) const {
  auto it = index_.find(Signature(term.name, term.arity()));
  return it != index_.end() && it->second.contains(term);
}

const std::set<Term>& FactStore::Lookup(std::string_view name,
                                        std::size_t arity) const {
  static const std::set<Term> kEmpty;
  auto it = index_.find(Signature(std::string(name), arity));
  return it == index_.end() ? kEmpty : it->second;
}

bool FactStore::HasName(std::string_view name) const {
  auto it = index_.lower_bound(Signature(std::string(name), 0));
  return it != index_.end() && it->first.first == name;
}

}  // namespace semlint
