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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divconst {

enum class BenchVariant { gm, wide, naive };

BenchVariant parse_bench_variant(std::string_view text);
std::string_view bench_variant_name(BenchVariant v) noexcept;

struct BenchConfig {
  std::vector<std::uint32_t> divisors{7, 19, 107};
  std::uint64_t n = std::uint64_t{1} << 27;  // dividends 0 .. n-1, n <= 2^32
  unsigned repeat = 10;
  std::vector<BenchVariant> variants{BenchVariant::gm, BenchVariant::wide};
};

struct VariantTiming {
  BenchVariant variant = BenchVariant::gm;
  std::uint64_t checksum = 0;  // sum of quotients mod 2^64
  std::vector<double> seconds;
  double mean = 0;
  double stddev = 0;  // sample standard deviation
};

struct DivisorBench {
  std::uint32_t d = 0;
  bool compile_time_constants = false;
  std::vector<VariantTiming> timings;
};

struct BenchResult {
  BenchConfig config;
  std::vector<DivisorBench> runs;

  /// Sum over divisors of the mean time of `v`.
  double total_mean(BenchVariant v) const;
  /// total_mean(v) / total_mean(gm); nullopt when gm or v was not run.
  std::optional<double> ratio_vs_gm(BenchVariant v) const;
};

/// Times `for x in [0, n): sum += q(x)` for every (divisor, variant). Each
/// kernel is native code for its variant; the default divisors get
/// compile-time constants. Timing order rotates across repeats. Throws
/// Error(bench_checksum) if variants of one divisor disagree, and
/// Error(invalid_domain) for n == 0, n > 2^32 or repeat == 0.
BenchResult run_bench(const BenchConfig& config);

}  // namespace divconst
