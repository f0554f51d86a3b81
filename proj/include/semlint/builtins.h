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

#ifndef SEMLINT_BUILTINS_H_
#define SEMLINT_BUILTINS_H_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semlint/fact_store.h"
#include "semlint/matcher.h"
#include "semlint/term.h"

namespace semlint {

// A host predicate: receives the goal arguments (variables possibly bound in
// `b`) and returns one extension of `b` per solution.
using BuiltinFn = std::function<std::vector<Bindings>(
    std::span<const Term> args, const Bindings& b, const FactStore& store)>;

class BuiltinRegistry {
 public:
  void Register(std::string name, std::size_t arity, BuiltinFn fn);
  const BuiltinFn* Find(std::string_view name, std::size_t arity) const;
  bool empty() const { return fns_.empty(); }

 private:
  std::map<std::pair<std::string, std::size_t>, BuiltinFn, std::less<>> fns_;
};

struct UrlProbeResult {
  enum class Outcome { kOk, kHttpError, kUnreachable, kTimeout };

  std::string url;
  Outcome outcome = Outcome::kOk;
  int status = 0;
  std::string detail;  // status line for HTTP errors, cause otherwise

  bool dead() const { return outcome != Outcome::kOk; }
};

class UrlProber {
 public:
  virtual ~UrlProber() = default;
  virtual UrlProbeResult Probe(const std::string& url) = 0;
};

// HEAD request, retried as GET when the server rejects the method.
// 2xx and 3xx count as live.
class HttpUrlProber : public UrlProber {
 public:
  explicit HttpUrlProber(std::chrono::milliseconds timeout);
  UrlProbeResult Probe(const std::string& url) override;

 private:
  std::chrono::milliseconds timeout_;
};

// Probes each distinct URL at most once per instance. Thread-safe.
class MemoizingProber : public UrlProber {
 public:
  MemoizingProber(std::shared_ptr<UrlProber> inner, std::size_t max_parallel);

  UrlProbeResult Probe(const std::string& url) override;

  // Probes the not-yet-known URLs with at most `max_parallel` in flight.
  void Prefetch(std::span<const std::string> urls);

  std::size_t probe_count() const { return probes_.load(); }

 private:
  std::shared_ptr<UrlProber> inner_;
  std::size_t max_parallel_;
  std::mutex mu_;
  std::map<std::string, std::shared_future<UrlProbeResult>, std::less<>> memo_;
  std::atomic<std::size_t> probes_{0};
};

struct BuiltinOptions {
  bool offline = false;
  bool normalize_names = false;
};

// sameyear/2, personne1/3, pubbyotherproject/3 and testurl/3. `prober` may
// be null when `offline` is set.
BuiltinRegistry StandardBuiltins(const BuiltinOptions& options,
                                 std::shared_ptr<UrlProber> prober);

// True when both trimmed strings parse as the same integer, or, if either
// is not an integer, when the trimmed strings are equal.
bool SameYear(std::string_view a, std::string_view b);

// Lowercases and strips accents (precomposed Latin letters and combining
// marks U+0300..U+036F).
std::string FoldName(std::string_view s);

bool IsAbsoluteHttpUrl(std::string_view url);

// Answer texts bound by testurl for a dead URL: a one-line summary and a
// detail line.
std::pair<std::string, std::string> DescribeDeadUrl(const UrlProbeResult& r);

}  // namespace semlint

#endif  // SEMLINT_BUILTINS_H_
