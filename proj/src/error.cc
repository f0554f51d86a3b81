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

#include "semlint/error.h"

#include "semlint/diagnostic.h"

namespace semlint {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedXml:
      return "malformed-xml";
    case ErrorKind::kEncoding:
      return "encoding-error";
    case ErrorKind::kLex:
      return "lex-error";
    case ErrorKind::kParse:
      return "parse-error";
    case ErrorKind::kTypeMismatch:
      return "type-mismatch";
    case ErrorKind::kNonGroundAssertion:
      return "non-ground-assertion";
    case ErrorKind::kUnknownPredicate:
      return "unknown-predicate";
    case ErrorKind::kInstantiation:
      return "instantiation-error";
    case ErrorKind::kUnboundInConsequence:
      return "unbound-in-consequence";
    case ErrorKind::kMalformedUrl:
      return "malformed-url";
    case ErrorKind::kCache:
      return "cache-error";
    case ErrorKind::kIo:
      return "io-error";
  }
  return "error";
}

Diagnostic Diagnostic::FromError(const Error& e) {
  Diagnostic d;
  d.severity = Severity::kError;
  if (e.has_pos()) d.pos = e.pos();
  d.kind = ErrorKindName(e.kind());
  d.message = e.detail();
  return d;
}

std::string Diagnostic::ToString() const {
  std::string out;
  if (pos) out += pos->ToString() + ": ";
  out += severity == Severity::kError ? "error: " : "warning: ";
  out += kind + ": " + message;
  return out;
}

}  // namespace semlint
