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

// semlint: checks XML document collections against semantic rule files.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "semlint/orchestrator.h"
#include "semlint/report.h"

int main(int argc, char** argv) {
  semlint::RunConfig cfg;
  std::string format = "text";

  CLI::App app{"Check XML documents against semantic consistency rules"};
  app.add_option("--rules", cfg.rule_files, "Rule file(s), read in order")
      ->required()
      ->expected(1, -1);
  app.add_option("--cache-dir", cfg.cache_dir,
                 "Directory for first-pass results (default: $SEMLINT_CACHE_DIR "
                 "or .semlint-cache)");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"html", "text", "machine"}));
  app.add_flag("--offline", cfg.offline, "Do not probe URLs");
  app.add_option("--url-timeout", cfg.url_timeout_secs, "URL probe timeout, seconds")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-probes", cfg.max_probes, "Concurrent URL probes")
      ->check(CLI::PositiveNumber);
  app.add_flag("--normalize-names", cfg.normalize_names,
               "Ignore case and accents when checking declared members");
  app.add_flag("--fail-on-warnings", cfg.fail_on_warnings,
               "Exit with status 1 when any message is reported");
  app.add_option("--jobs,-j", cfg.jobs, "Parallel first-pass workers")
      ->check(CLI::PositiveNumber);
  app.add_option("--output,-o", cfg.output_file, "Write the report to a file");
  app.add_option("inputs", cfg.inputs, "Input XML files or glob patterns")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (cfg.cache_dir.empty()) {
    if (const char* env = std::getenv("SEMLINT_CACHE_DIR"); env && *env) {
      cfg.cache_dir = env;
    }
  }
  cfg.format = *semlint::ParseReportFormat(format);
  return semlint::Run(cfg);
}
