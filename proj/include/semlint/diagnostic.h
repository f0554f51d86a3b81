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

#ifndef SEMLINT_DIAGNOSTIC_H_
#define SEMLINT_DIAGNOSTIC_H_

#include <compare>
#include <optional>
#include <string>

#include "semlint/error.h"
#include "semlint/source_pos.h"

namespace semlint {

// A problem with the ruleset or the run itself, as opposed to a document
// warning (Message).
struct Diagnostic {
  enum class Severity { kWarning, kError };

  Severity severity = Severity::kError;
  std::optional<SourcePos> pos;
  std::string kind;
  std::string message;

  static Diagnostic FromError(const Error& e);

  // `file:line: error: kind: message`
  std::string ToString() const;

  friend auto operator<=>(const Diagnostic&, const Diagnostic&) = default;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

}  // namespace semlint

#endif  // SEMLINT_DIAGNOSTIC_H_
