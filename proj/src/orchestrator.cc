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

#include "semlint/orchestrator.h"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>

#include "semlint/cache.h"
#include "semlint/digest.h"
#include "semlint/dsl.h"
#include "semlint/engine.h"
#include "semlint/error.h"
#include "semlint/xml.h"

namespace semlint {

namespace fs = std::filesystem;

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, path + ": " + std::strerror(errno));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, path + ": read failed");
  return ss.str();
}

void WriteFileAtomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp" +
                    std::to_string(std::hash<std::thread::id>()(
                        std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, tmp + ": " + std::strerror(errno));
    out << data;
    if (!out.flush()) throw Error(ErrorKind::kIo, tmp + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::kIo, path + ": " + ec.message());
}

bool HasGlobChars(const std::string& s) {
  return s.find_first_of("*?[") != std::string::npos;
}

// Reads just the two header lines of a cache file.
std::optional<std::pair<std::string, std::string>> ReadCacheHeader(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string input, rules;
  if (!std::getline(in, input) || !std::getline(in, rules)) return std::nullopt;
  if (!input.starts_with("#input ") || !rules.starts_with("#rules ")) {
    return std::nullopt;
  }
  return std::pair(input.substr(7), rules.substr(7));
}

std::string ResolveCacheDir(const RunConfig& cfg) {
  return cfg.cache_dir.empty() ? std::string(".semlint-cache") : cfg.cache_dir;
}

}  // namespace

std::vector<std::string> ExpandInputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const std::string& in : inputs) {
    if (!HasGlobChars(in)) {
      out.push_back(in);
      continue;
    }
    glob_t g{};
    int rc = ::glob(in.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    } else if (rc == GLOB_NOMATCH) {
      out.push_back(in);  // reported as unreadable later
    }
    ::globfree(&g);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string RulesDigest(const std::vector<std::string>& rule_files) {
  std::vector<RuleSource> sources;
  for (const std::string& f : rule_files) sources.push_back({f, ReadFile(f)});
  return RuleSourcesDigest(sources);
}

std::string CachePath(const std::string& cache_dir, const std::string& input) {
  return (fs::path(cache_dir) / (Sha256Hex(input).substr(0, 32) + ".p1"))
      .string();
}

std::vector<WorkItem> PlanWork(const RunConfig& cfg) {
  std::string rules_digest = RulesDigest(cfg.rule_files);
  std::string cache_dir = ResolveCacheDir(cfg);
  std::vector<WorkItem> plan;
  for (const std::string& file : ExpandInputs(cfg.inputs)) {
    WorkItem item;
    item.file = file;
    item.input_digest = Sha256Hex(ReadFile(file));
    auto header = ReadCacheHeader(CachePath(cache_dir, file));
    bool fresh = header && header->first == item.input_digest &&
                 header->second == rules_digest;
    item.state = fresh ? WorkState::kCached : WorkState::kStale;
    plan.push_back(std::move(item));
  }
  return plan;
}

RunStats RunPipeline(const RunConfig& cfg, std::ostream& report,
                     std::ostream& diag, std::shared_ptr<UrlProber> prober) {
  RunStats stats;
  auto fatal = [&](const Error& e) {
    diag << Diagnostic::FromError(e).ToString() << '\n';
    stats.exit_code = 2;
    stats.diagnostics = 1;
    return stats;
  };

  if (cfg.rule_files.empty() || cfg.inputs.empty()) {
    return fatal(Error(ErrorKind::kIo, "at least one rule file and one input are required"));
  }
  std::string cache_dir = ResolveCacheDir(cfg);

  RuleSet rules;
  std::vector<WorkItem> plan;
  try {
    std::vector<RuleSource> sources;
    for (const std::string& f : cfg.rule_files) sources.push_back({f, ReadFile(f)});
    rules = ParseRuleFiles(sources);
    std::error_code ec;
    fs::create_directories(cache_dir, ec);
    if (ec) throw Error(ErrorKind::kIo, cache_dir + ": " + ec.message());
    plan = PlanWork(cfg);
  } catch (const Error& e) {
    return fatal(e);
  }

  std::vector<std::optional<PassOneResult>> results(plan.size());
  std::vector<std::optional<Diagnostic>> failures(plan.size());
  std::vector<std::size_t> stale;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (plan[i].state == WorkState::kCached) {
      try {
        results[i] = DeserializePassOne(
            ReadFile(CachePath(cache_dir, plan[i].file)), plan[i].file);
        ++stats.cached;
        continue;
      } catch (const Error&) {
        // Unreadable cache entries are rebuilt.
      }
    }
    stale.push_back(i);
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < stale.size(); k = next++) {
      const WorkItem& item = plan[stale[k]];
      try {
        std::string bytes = ReadFile(item.file);
        XmlNodePtr doc = ParseXml(bytes, item.file);
        PassOneResult r = EvaluateFile(doc, rules, item.file);
        r.input_digest = Sha256Hex(bytes);
        r.rules_digest = rules.source_hash;
        WriteFileAtomic(CachePath(cache_dir, item.file), SerializePassOne(r));
        results[stale[k]] = std::move(r);
      } catch (const Error& e) {
        failures[stale[k]] = Diagnostic::FromError(e);
      }
    }
  };
  {
    std::size_t jobs = std::clamp<std::size_t>(cfg.jobs, 1, std::max<std::size_t>(1, stale.size()));
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  stats.evaluated = stale.size();

  std::vector<PassOneResult> ok;
  std::vector<Diagnostic> diagnostics;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (failures[i]) diagnostics.push_back(std::move(*failures[i]));
    if (results[i]) ok.push_back(std::move(*results[i]));
  }
  FactStore store = MergeFacts(ok);
  std::vector<DelayedTest> tests;
  for (PassOneResult& r : ok) {
    for (DelayedTest& t : r.tests) tests.push_back(std::move(t));
    for (Diagnostic& d : r.diagnostics) diagnostics.push_back(std::move(d));
  }

  if (!prober) {
    prober = std::make_shared<HttpUrlProber>(std::chrono::milliseconds(
        static_cast<long long>(cfg.url_timeout_secs * 1000)));
  }
  auto memo = std::make_shared<MemoizingProber>(prober, cfg.max_probes);
  if (!cfg.offline) memo->Prefetch(CollectProbeUrls(tests));
  BuiltinRegistry builtins =
      StandardBuiltins({cfg.offline, cfg.normalize_names}, memo);
  Resolution res = ResolveTests(tests, store, builtins, AssertedNames(rules));
  for (Diagnostic& d : res.diagnostics) diagnostics.push_back(std::move(d));
  std::sort(diagnostics.begin(), diagnostics.end());
  diagnostics.erase(std::unique(diagnostics.begin(), diagnostics.end()),
                    diagnostics.end());

  std::string text = EmitReport(res.messages, diagnostics, cfg.format);
  if (cfg.output_file.empty()) {
    report << text;
    report.flush();
  } else {
    try {
      WriteFileAtomic(cfg.output_file, text);
    } catch (const Error& e) {
      diagnostics.push_back(Diagnostic::FromError(e));
    }
  }
  for (const Diagnostic& d : diagnostics) diag << d.ToString() << '\n';

  std::vector<Message> unique_msgs = res.messages;
  std::sort(unique_msgs.begin(), unique_msgs.end());
  unique_msgs.erase(std::unique(unique_msgs.begin(), unique_msgs.end()),
                    unique_msgs.end());
  stats.messages = unique_msgs.size();
  stats.diagnostics = diagnostics.size();
  bool errors = std::any_of(diagnostics.begin(), diagnostics.end(),
                            [](const Diagnostic& d) {
                              return d.severity == Diagnostic::Severity::kError;
                            });
  if (errors) {
    stats.exit_code = 2;
  } else if (cfg.fail_on_warnings && (stats.messages > 0 || stats.diagnostics > 0)) {
    stats.exit_code = 1;
  } else {
    stats.exit_code = 0;
  }
  return stats;
}

int Run(const RunConfig& cfg) {
  return RunPipeline(cfg, std::cout, std::cerr).exit_code;
}

}  // namespace semlint
