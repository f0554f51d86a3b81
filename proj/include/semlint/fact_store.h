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

#ifndef SEMLINT_FACT_STORE_H_
#define SEMLINT_FACT_STORE_H_

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "semlint/source_pos.h"
#include "semlint/term.h"

namespace semlint {

// A ground assertion. `origin` is informational and not part of identity.
struct Fact {
  Term term;
  SourcePos origin;
};

// The global environment: a set of ground functor terms indexed by
// (name, arity). Iteration is in canonical term order.
class FactStore {
 public:
  using Signature = std::pair<std::string, std::size_t>;

  // Returns false when the term was already present.
  bool Add(Term term);

  bool Contains(const Term& term) const;
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Facts with the given signature, canonical order; empty set if none.
  const std::set<Term>& Lookup(std::string_view name, std::size_t arity) const;

  bool HasName(std::string_view name) const;

  const std::map<Signature, std::set<Term>>& index() const { return index_; }

 private:
  std::map<Signature, std::set<Term>> index_;
  std::size_t size_ = 0;
};

}  // namespace semlint

#endif  // SEMLINT_FACT_STORE_H_
