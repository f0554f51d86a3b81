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

#ifndef SEMLINT_SOURCE_POS_H_
#define SEMLINT_SOURCE_POS_H_

#include <compare>
#include <cstddef>
#include <string>

namespace semlint {

// A file/line anchor. `file` is kept exactly as given on the command line.
struct SourcePos {
  std::string file;
  std::size_t line = 1;

  friend auto operator<=>(const SourcePos&, const SourcePos&) = default;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;

  std::string ToString() const { return file + ":" + std::to_string(line); }
};

}  // namespace semlint

#endif  // SEMLINT_SOURCE_POS_H_
