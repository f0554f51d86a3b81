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

#ifndef SEMLINT_ORCHESTRATOR_H_
#define SEMLINT_ORCHESTRATOR_H_

#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "semlint/builtins.h"
#include "semlint/report.h"

namespace semlint {

struct RunConfig {
  std::vector<std::string> rule_files;
  std::vector<std::string> inputs;  // paths or glob patterns
  std::string cache_dir;
  ReportFormat format = ReportFormat::kText;
  bool offline = false;
  double url_timeout_secs = 10.0;
  std::size_t max_probes = 8;
  bool normalize_names = false;
  bool fail_on_warnings = false;
  std::size_t jobs = 1;
  std::string output_file;  // empty: the report stream passed to RunPipeline
};

enum class WorkState { kCached, kStale };

struct WorkItem {
  std::string file;
  WorkState state = WorkState::kStale;
  std::string input_digest;
};

// Expands globs; result is sorted and free of duplicates.
std::vector<std::string> ExpandInputs(const std::vector<std::string>& inputs);

// Digest over the contents of every rule file in order.
std::string RulesDigest(const std::vector<std::string>& rule_files);

// Cache file location for one input.
std::string CachePath(const std::string& cache_dir, const std::string& input);

// An input is cached iff its cache file records the current input digest
// and rules digest. Throws Error(kIo) on an unreadable input.
std::vector<WorkItem> PlanWork(const RunConfig& cfg);

struct RunStats {
  int exit_code = 0;
  std::size_t evaluated = 0;  // pass-1 evaluations executed
  std::size_t cached = 0;     // inputs served from the cache
  std::size_t messages = 0;
  std::size_t diagnostics = 0;
};

// Runs both passes and writes the report to `report` (or cfg.output_file)
// and diagnostics to `diag`. `prober` overrides the HTTP prober; tests pass
// a stub.
RunStats RunPipeline(const RunConfig& cfg, std::ostream& report,
                     std::ostream& diag,
                     std::shared_ptr<UrlProber> prober = nullptr);

// Exit code: 0 clean, 1 messages with fail_on_warnings, 2 on any error.
int Run(const RunConfig& cfg);

}  // namespace semlint

#endif  // SEMLINT_ORCHESTRATOR_H_
