// Copyright 2026 The divconst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "divconst/evaluator.hpp"

#include <algorithm>
#include <random>

#include "divconst/magic.hpp"
#include "kernels.hpp"
#include "parallel.hpp"

namespace divconst {
namespace {

constexpr std::uint64_t kChunk = std::uint64_t{1} << 22;

inline std::uint64_t host_div(std::uint64_t x, std::uint64_t d) {
  // 32-bit divide is several times faster than 64-bit on most x86 cores.
  if (((x | d) >> 32) == 0) {
    return static_cast<std::uint32_t>(x) / static_cast<std::uint32_t>(d);
  }
  return x / d;
}

struct Tally {
  std::uint64_t mismatches = 0;
  std::optional<Counterexample> first;

  void merge(const Tally& other) {
    mismatches += other.mismatches;
    if (other.first && (!first || other.first->x < first->x)) {
      first = other.first;
    }
  }
};

template <class Kernel>
Tally sweep(const Kernel& kernel, std::uint64_t d, std::uint64_t lo,
            std::uint64_t hi) {
  Tally t;
  for (std::uint64_t x = lo;; ++x) {
    const std::uint64_t got = kernel(x);
    const std::uint64_t expected = host_div(x, d);
    if (got != expected) {
      if (t.mismatches++ == 0) t.first = Counterexample{x, got, expected};
    }
    if (x == hi) break;
  }
  return t;
}

template <class Kernel>
Tally sweep_parallel(const Kernel& kernel, std::uint64_t d, std::uint64_t lo,
                     std::uint64_t hi, unsigned jobs) {
  const std::uint64_t chunks = (hi - lo) / kChunk + 1;
  const auto results =
      detail::run_chunks<Tally>(chunks, jobs, [&](std::uint64_t i) {
        const std::uint64_t c_lo = lo + i * kChunk;
        const std::uint64_t c_hi = std::min(hi, c_lo + (kChunk - 1));
        return sweep(kernel, d, c_lo, c_hi);
      });
  Tally total;
  for (const Tally& r : results) total.merge(r);
  return total;
}

}  // namespace

std::uint64_t oracle_div(std::uint64_t x, std::uint64_t d) {
  if (d == 0) throw Error(Errc::invalid_divisor, "division by zero");
  return host_div(x, d);
}

std::uint64_t eval_strategy(const Strategy& s, std::uint64_t x, Width width) {
  if (x > width.max()) {
    throw Error(Errc::out_of_range,
                "dividend " + std::to_string(x) + " exceeds the " +
                    std::to_string(width.bits()) + "-bit range");
  }
  return detail::with_kernel(s, width,
                             [x](const auto& kernel) { return kernel(x); });
}

std::string describe(const Domain& domain) {
  if (std::holds_alternative<ExhaustiveDomain>(domain)) return "exhaustive";
  if (const auto* r = std::get_if<RangeDomain>(&domain)) {
    return "range:" + std::to_string(r->lo) + "-" + std::to_string(r->hi);
  }
  const auto& s = std::get<SampleDomain>(domain);
  return "sample:" + std::to_string(s.count) + "@" + std::to_string(s.seed);
}

std::vector<std::uint64_t> boundary_inputs(std::uint64_t d, Width width) {
  const std::uint64_t m = width.max();
  const std::uint64_t m_d = max_residue(d, width);
  std::vector<std::uint64_t> xs = {0, 1, d - 1, d, m_d, m - 1, m};
  if (d + 1 <= m) xs.push_back(d + 1);
  if (m_d >= 1) xs.push_back(m_d - 1);
  if (m_d + 1 <= m) xs.push_back(m_d + 1);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

VerifyReport verify_strategy(std::uint64_t d, Width width, const Strategy& s,
                             const Domain& domain, unsigned jobs) {
  detail::check_divisor_range(d, width);
  VerifyReport report;
  report.d = d;
  report.width = width;
  report.variant = std::string(strategy_name(s));
  report.domain = domain;

  Tally tally;
  if (const auto* sample = std::get_if<SampleDomain>(&domain)) {
    std::vector<std::uint64_t> xs = boundary_inputs(d, width);
    std::mt19937_64 rng(sample->seed);
    xs.reserve(xs.size() + sample->count);
    for (std::uint64_t i = 0; i < sample->count; ++i) {
      xs.push_back(rng() & width.max());
    }
    detail::with_kernel(s, width, [&](const auto& kernel) {
      for (std::uint64_t x : xs) {
        const std::uint64_t got = kernel(x);
        const std::uint64_t expected = host_div(x, d);
        if (got == expected) continue;
        ++tally.mismatches;
        if (!tally.first || x < tally.first->x) {
          tally.first = Counterexample{x, got, expected};
        }
      }
    });
    report.tested = xs.size();
  } else {
    std::uint64_t lo = 0;
    std::uint64_t hi = width.max();
    if (const auto* r = std::get_if<RangeDomain>(&domain)) {
      if (r->lo > r->hi || r->hi > width.max()) {
        throw Error(Errc::invalid_domain,
                    "range [" + std::to_string(r->lo) + ", " +
                        std::to_string(r->hi) + "] is empty or exceeds M");
      }
      lo = r->lo;
      hi = r->hi;
    }
    tally = detail::with_kernel(s, width, [&](const auto& kernel) {
      return sweep_parallel(kernel, d, lo, hi, jobs);
    });
    report.tested = hi - lo + 1;
  }
  report.mismatches = tally.mismatches;
  report.first = tally.first;
  return report;
}

std::vector<VerifyReport> verify(std::uint64_t d, Width width,
                                 VariantRequest request, const Domain& domain,
                                 unsigned jobs) {
  std::vector<VerifyReport> reports;
  for (const Strategy& s : lower(d, width, request)) {
    reports.push_back(verify_strategy(d, width, s, domain, jobs));
  }
  return reports;
}

}  // namespace divconst
