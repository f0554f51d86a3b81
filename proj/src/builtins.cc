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

#include "semlint/builtins.h"

#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>

#include "semlint/error.h"

namespace semlint {

void BuiltinRegistry::Register(std::string name, std::size_t arity,
                               BuiltinFn fn) {
  fns_[{std::move(name), arity}] = std::move(fn);
}

const BuiltinFn* BuiltinRegistry::Find(std::string_view name,
                                       std::size_t arity) const {
  auto it = fns_.find(std::pair<std::string, std::size_t>(name, arity));
  return it == fns_.end() ? nullptr : &it->second;
}

namespace {

std::string_view Trim(std::string_view s) {
  auto blank = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  };
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<long long> ParseInteger(std::string_view s) {
  long long v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

// Projection of a ground term argument.
std::string TermText(const Term& t) {
  return t.is_str() ? t.name : ToCanonical(t);
}

std::string RequireText(const char* builtin, std::span<const Term> args,
                        std::size_t i, const Bindings& b) {
  Term t = Substitute(args[i], b);
  if (!t.IsGround()) {
    throw Error(ErrorKind::kInstantiation,
                std::string(builtin) + "/" + std::to_string(args.size()) +
                    ": argument " + std::to_string(i + 1) + " is unbound");
  }
  return TermText(t);
}

// Latin-1 Supplement and Latin Extended-A letters folded to lowercase ASCII.
struct FoldRange {
  std::uint32_t first;
  std::uint32_t last;
  const char* ascii;
};

constexpr FoldRange kFoldTable[] = {
    {0xC0, 0xC5, "a"},     {0xC6, 0xC6, "ae"},    {0xC7, 0xC7, "c"},
    {0xC8, 0xCB, "e"},     {0xCC, 0xCF, "i"},     {0xD0, 0xD0, "d"},
    {0xD1, 0xD1, "n"},     {0xD2, 0xD6, "o"},     {0xD8, 0xD8, "o"},
    {0xD9, 0xDC, "u"},     {0xDD, 0xDD, "y"},     {0xDE, 0xDE, "th"},
    {0xDF, 0xDF, "ss"},    {0xE0, 0xE5, "a"},     {0xE6, 0xE6, "ae"},
    {0xE7, 0xE7, "c"},     {0xE8, 0xEB, "e"},     {0xEC, 0xEF, "i"},
    {0xF0, 0xF0, "d"},     {0xF1, 0xF1, "n"},     {0xF2, 0xF6, "o"},
    {0xF8, 0xF8, "o"},     {0xF9, 0xFC, "u"},     {0xFD, 0xFD, "y"},
    {0xFE, 0xFE, "th"},    {0xFF, 0xFF, "y"},     {0x100, 0x105, "a"},
    {0x106, 0x10D, "c"},   {0x10E, 0x111, "d"},   {0x112, 0x11B, "e"},
    {0x11C, 0x123, "g"},   {0x124, 0x127, "h"},   {0x128, 0x131, "i"},
    {0x132, 0x133, "ij"},  {0x134, 0x135, "j"},   {0x136, 0x138, "k"},
    {0x139, 0x142, "l"},   {0x143, 0x14B, "n"},   {0x14C, 0x151, "o"},
    {0x152, 0x153, "oe"},  {0x154, 0x159, "r"},   {0x15A, 0x161, "s"},
    {0x162, 0x167, "t"},   {0x168, 0x173, "u"},   {0x174, 0x175, "w"},
    {0x176, 0x178, "y"},   {0x179, 0x17E, "z"},   {0x17F, 0x17F, "s"},
};

void AppendUtf8(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

bool SameYear(std::string_view a, std::string_view b) {
  a = Trim(a);
  b = Trim(b);
  auto ia = ParseInteger(a);
  auto ib = ParseInteger(b);
  if (ia && ib) return *ia == *ib;
  return a == b;
}

std::string FoldName(std::string_view s) {
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2
                                   : (c & 0xF0) == 0xE0 ? 3
                                                        : 4;
    if (i + len > s.size()) len = s.size() - i;
    std::uint32_t cp = len == 1 ? c : c & (0x7F >> len);
    for (std::size_t k = 1; k < len; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    }
    i += len;
    if (cp >= 0x300 && cp <= 0x36F) continue;
    if (cp >= 'A' && cp <= 'Z') {
      out.push_back(static_cast<char>(cp - 'A' + 'a'));
      continue;
    }
    const FoldRange* hit = nullptr;
    for (const FoldRange& r : kFoldTable) {
      if (cp >= r.first && cp <= r.last) {
        hit = &r;
        break;
      }
    }
    if (hit) {
      out += hit->ascii;
    } else {
      AppendUtf8(cp, out);
    }
  }
  return out;
}

bool IsAbsoluteHttpUrl(std::string_view url) {
  std::string_view rest;
  if (url.starts_with("http://")) {
    rest = url.substr(7);
  } else if (url.starts_with("https://")) {
    rest = url.substr(8);
  } else {
    return false;
  }
  std::string_view host = rest.substr(0, rest.find_first_of("/?#"));
  if (host.empty()) return false;
  return std::none_of(host.begin(), host.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '"' || c == '<' ||
           c == '>';
  });
}

std::pair<std::string, std::string> DescribeDeadUrl(const UrlProbeResult& r) {
  switch (r.outcome) {
    case UrlProbeResult::Outcome::kHttpError:
      return {r.url + ":", "ERROR " + std::to_string(r.status) + ": " + r.detail};
    case UrlProbeResult::Outcome::kTimeout:
    case UrlProbeResult::Outcome::kUnreachable:
      return {"No answer or time out,",
              "the server seems to be down or does not exist (" + r.detail +
                  ")"};
    case UrlProbeResult::Outcome::kOk:
      break;
  }
  return {r.url + ":", "OK"};
}

HttpUrlProber::HttpUrlProber(std::chrono::milliseconds timeout)
    : timeout_(timeout) {}

UrlProbeResult HttpUrlProber::Probe(const std::string& url) {
  UrlProbeResult out;
  out.url = url;
  std::size_t scheme_end = url.find("://");
  std::size_t path_start = url.find_first_of("/?#", scheme_end + 3);
  std::string origin = url.substr(0, path_start);
  std::string path =
      path_start == std::string::npos ? "/" : url.substr(path_start);
  if (auto hash = path.find('#'); hash != std::string::npos) path.resize(hash);
  if (path.empty() || path[0] != '/') path.insert(0, "/");

  httplib::Client client(origin);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  client.set_follow_location(false);

  auto start = std::chrono::steady_clock::now();
  auto res = client.Head(path);
  if (res && (res->status == 405 || res->status == 501)) res = client.Get(path);
  if (!res) {
    auto elapsed = std::chrono::steady_clock::now() - start;
    httplib::Error err = res.error();
    bool timed_out = err == httplib::Error::ConnectionTimeout ||
                     (err == httplib::Error::Read && elapsed >= timeout_);
    out.outcome = timed_out ? UrlProbeResult::Outcome::kTimeout
                            : UrlProbeResult::Outcome::kUnreachable;
    out.detail = timed_out ? "timed out" : httplib::to_string(err);
    return out;
  }
  out.status = res->status;
  if (res->status >= 400) {
    out.outcome = UrlProbeResult::Outcome::kHttpError;
    out.detail =
        res->reason.empty() ? httplib::status_message(res->status) : res->reason;
  } else {
    out.outcome = UrlProbeResult::Outcome::kOk;
  }
  return out;
}

MemoizingProber::MemoizingProber(std::shared_ptr<UrlProber> inner,
                                 std::size_t max_parallel)
    : inner_(std::move(inner)), max_parallel_(std::max<std::size_t>(1, max_parallel)) {}

UrlProbeResult MemoizingProber::Probe(const std::string& url) {
  std::promise<UrlProbeResult> promise;
  std::shared_future<UrlProbeResult> future;
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(url);
    if (it != memo_.end()) {
      future = it->second;
    } else {
      memo_.emplace(url, promise.get_future().share());
    }
  }
  if (future.valid()) return future.get();
  ++probes_;
  UrlProbeResult r = inner_->Probe(url);
  promise.set_value(r);
  return r;
}

void MemoizingProber::Prefetch(std::span<const std::string> urls) {
  std::vector<std::string> todo;
  {
    std::lock_guard lock(mu_);
    for (const std::string& u : urls) {
      if (!memo_.contains(u) &&
          std::find(todo.begin(), todo.end(), u) == todo.end()) {
        todo.push_back(u);
      }
    }
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) Probe(todo[i]);
  };
  std::vector<std::jthread> pool;
  std::size_t n = std::min(max_parallel_, todo.size());
  for (std::size_t k = 0; k < n; ++k) pool.emplace_back(worker);
}

BuiltinRegistry StandardBuiltins(const BuiltinOptions& options,
                                 std::shared_ptr<UrlProber> prober) {
  BuiltinRegistry reg;

  reg.Register("sameyear", 2,
               [](std::span<const Term> args, const Bindings& b,
                  const FactStore&) -> std::vector<Bindings> {
                 std::string x = RequireText("sameyear", args, 0, b);
                 std::string y = RequireText("sameyear", args, 1, b);
                 if (SameYear(x, y)) return {b};
                 return {};
               });

  bool fold = options.normalize_names;
  reg.Register(
      "personne1", 3,
      [fold](std::span<const Term> args, const Bindings& b,
             const FactStore& store) -> std::vector<Bindings> {
        std::string key[3];
        for (std::size_t i = 0; i < 3; ++i) {
          key[i] = RequireText("personne1", args, i, b);
          if (fold) key[i] = FoldName(key[i]);
        }
        for (const Term& f : store.Lookup("personne", 3)) {
          bool same = true;
          for (std::size_t i = 0; i < 3 && same; ++i) {
            std::string v = TermText(f.args[i]);
            same = (fold ? FoldName(v) : v) == key[i];
          }
          if (same) return {b};
        }
        return {};
      });

  reg.Register("pubbyotherproject", 3,
               [](std::span<const Term> args, const Bindings& b,
                  const FactStore& store) -> std::vector<Bindings> {
                 std::string title = RequireText("pubbyotherproject", args, 0, b);
                 std::string project =
                     RequireText("pubbyotherproject", args, 1, b);
                 std::vector<Bindings> out;
                 for (const Term& f : store.Lookup("pub", 2)) {
                   if (TermText(f.args[0]) != title) continue;
                   if (TermText(f.args[1]) == project) continue;
                   if (auto s = Unify(args[2], f.args[1], b)) {
                     out.push_back(std::move(*s));
                   }
                 }
                 return out;
               });

  bool offline = options.offline;
  reg.Register(
      "testurl", 3,
      [offline, prober](std::span<const Term> args, const Bindings& b,
                        const FactStore&) -> std::vector<Bindings> {
        std::string url = RequireText("testurl", args, 0, b);
        if (offline) return {};
        std::pair<std::string, std::string> answers;
        if (!IsAbsoluteHttpUrl(url)) {
          answers = {url + ":",
                     "malformed URL (expected an absolute http or https URL)"};
        } else {
          UrlProbeResult r = prober->Probe(url);
          if (!r.dead()) return {};
          answers = DescribeDeadUrl(r);
        }
        std::optional<Bindings> s =
            Unify(args[1], Term::Str(answers.first), b);
        if (s) s = Unify(args[2], Term::Str(answers.second), *s);
        if (!s) return {};
        return {std::move(*s)};
      });

  return reg;
}

}  // namespace semlint
