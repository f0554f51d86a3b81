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

#ifndef SEMLINT_CACHE_H_
#define SEMLINT_CACHE_H_

#include <string>
#include <string_view>

#include "semlint/dsl.h"
#include "semlint/engine.h"
#include "semlint/term.h"

namespace semlint {

// Line-oriented cache file for one PassOneResult:
//
//   #input <sha256>
//   #rules <sha256>
//   pub("T","axis").%12                  one fact per line, %origin line
//   %tests
//   test(ifnot,4,pos("a.xml",12),personne1("A","B",$X),bindings(...),...).
//   %diagnostics
//   diag(warning,pos("a.xml",3),"assignment-conflict","...").
//
// Every term is in canonical form (see ToCanonical).
std::string SerializePassOne(const PassOneResult& result);

// Throws Error(kCache) on any syntax problem.
PassOneResult DeserializePassOne(std::string_view text,
                                 const std::string& source_file);

// Term encoding of a pattern, used for test consequences in the cache.
Term PatternToTerm(const Pattern& p);
Pattern TermToPattern(const Term& t);

}  // namespace semlint

#endif  // SEMLINT_CACHE_H_
