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

#ifndef SEMLINT_ERROR_H_
#define SEMLINT_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>

#include "semlint/source_pos.h"

namespace semlint {

enum class ErrorKind {
  kMalformedXml,
  kEncoding,
  kLex,
  kParse,
  kTypeMismatch,
  kNonGroundAssertion,
  kUnknownPredicate,
  kInstantiation,
  kUnboundInConsequence,
  kMalformedUrl,
  kCache,
  kIo,
};

const char* ErrorKindName(ErrorKind kind);

// All recoverable failures are reported through this one exception type.
// The position is optional because some errors (IO on a missing file,
// cache corruption) have no meaningful line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, SourcePos pos, std::string detail)
      : std::runtime_error(Format(kind, pos, detail)),
        kind_(kind),
        pos_(std::move(pos)),
        has_pos_(true),
        detail_(std::move(detail)) {}

  Error(ErrorKind kind, std::string detail)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + detail),
        kind_(kind),
        detail_(std::move(detail)) {}

  ErrorKind kind() const { return kind_; }
  const SourcePos& pos() const { return pos_; }
  bool has_pos() const { return has_pos_; }
  const std::string& detail() const { return detail_; }

 private:
  static std::string Format(ErrorKind kind, const SourcePos& pos,
                            const std::string& detail) {
    return pos.ToString() + ": " + ErrorKindName(kind) + ": " + detail;
  }

  ErrorKind kind_;
  SourcePos pos_;
  bool has_pos_ = false;
  std::string detail_;
};

}  // namespace semlint

#endif  // SEMLINT_ERROR_H_
