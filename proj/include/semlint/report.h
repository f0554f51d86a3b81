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

#ifndef SEMLINT_REPORT_H_
#define SEMLINT_REPORT_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semlint/diagnostic.h"
#include "semlint/dsl.h"
#include "semlint/matcher.h"
#include "semlint/source_pos.h"

namespace semlint {

// A rendered document warning.
struct Message {
  SourcePos pos;
  std::size_t rule_index = 0;
  std::string html;
  std::string text;
  std::string solution_key;

  // Report order: file, line, rule, solution.
  friend std::weak_ordering operator<=>(const Message& a, const Message& b);
  friend bool operator==(const Message&, const Message&) = default;
};

struct Rendered {
  std::string html;
  std::string text;
};

// Pattern consequences render as an HTML fragment with variables replaced
// by their (escaped) string projection; term consequences render in
// canonical term syntax. `text` carries the same content without tags or
// escaping. Both are whitespace-normalized.
//
// Throws Error(kUnboundInConsequence) naming the variable.
Rendered RenderConsequence(const Consequence& c, const Bindings& b);

std::string EscapeHtml(std::string_view s);

enum class ReportFormat { kHtml, kText, kMachine };

std::optional<ReportFormat> ParseReportFormat(std::string_view name);

// Sorts, drops exact duplicates and renders. Output is a pure function of
// the inputs.
//
//   html:    <ul> of the message fragments, then diagnostics and summary
//   text:    `file:line: text` per message, then diagnostics and summary
//   machine: one JSON object per line, `{"file","html","line","rule","text"}`
//            then `{"diagnostic":...}` records and a final `{"summary":...}`
std::string EmitReport(std::vector<Message> msgs,
                       std::span<const Diagnostic> diagnostics,
                       ReportFormat format);

}  // namespace semlint

#endif  // SEMLINT_REPORT_H_
