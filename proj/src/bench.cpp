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

#include "divconst/bench.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "divconst/error.hpp"
#include "divconst/lowering.hpp"
#include "divconst/magic.hpp"

// This file is built without auto-vectorization so the timed loops are the
// scalar instruction sequences being compared.

namespace divconst {
namespace {

using LoopFn = std::uint64_t (*)(std::uint64_t n);

constexpr Width kW32{32};

template <std::uint64_t CLo, unsigned S>
struct StaticGm {
  static std::uint32_t q(std::uint32_t x) {
    const auto y = static_cast<std::uint32_t>((std::uint64_t{x} * CLo) >> 32);
    const std::uint32_t t = ((x - y) >> 1) + y;
    return t >> S;
  }
};

template <std::uint64_t K>
struct StaticWide {
  static std::uint32_t q(std::uint32_t x) {
    return static_cast<std::uint32_t>((u128{x} * K) >> 64);
  }
};

template <std::uint64_t C, unsigned A>
struct StaticNaive {
  static std::uint32_t q(std::uint32_t x) {
    return static_cast<std::uint32_t>((u128{x} * C) >> A);
  }
};

template <class Kernel>
[[gnu::noinline]] std::uint64_t static_loop(std::uint64_t n) {
  std::uint64_t sum = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    sum += Kernel::q(static_cast<std::uint32_t>(x));
  }
  return sum;
}

template <std::uint32_t D>
struct StaticDivisor {
  static constexpr MagicResult m = compute_magic(D, kW32);
  static_assert(m.c_bits == 33, "benchmark divisors must need a 33-bit c");
  static constexpr std::uint64_t c_lo = m.c - (std::uint64_t{1} << 32);
  static constexpr unsigned s = m.a - 33;
  static constexpr std::uint64_t k =
      static_cast<std::uint64_t>(u128{m.c} << (64 - m.a));

  static LoopFn loop(BenchVariant v) {
    switch (v) {
      case BenchVariant::gm:
        return &static_loop<StaticGm<c_lo, s>>;
      case BenchVariant::wide:
        return &static_loop<StaticWide<k>>;
      case BenchVariant::naive:
        return &static_loop<StaticNaive<m.c, m.a>>;
    }
    return nullptr;
  }
};

LoopFn static_loop_for(std::uint32_t d, BenchVariant v) {
  switch (d) {
    case 7:
      return StaticDivisor<7>::loop(v);
    case 19:
      return StaticDivisor<19>::loop(v);
    case 107:
      return StaticDivisor<107>::loop(v);
    default:
      return nullptr;
  }
}

// Runtime-constant kernels for other divisors. The constants live in
// registers for the whole loop, which is what a hoisted immediate gives.

[[gnu::noinline]] std::uint64_t runtime_gm(std::uint64_t n, std::uint64_t c_lo,
                                           unsigned s) {
  std::uint64_t sum = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    const auto xi = static_cast<std::uint32_t>(x);
    const auto y = static_cast<std::uint32_t>((std::uint64_t{xi} * c_lo) >> 32);
    sum += (((xi - y) >> 1) + y) >> s;
  }
  return sum;
}

[[gnu::noinline]] std::uint64_t runtime_wide(std::uint64_t n, std::uint64_t k) {
  std::uint64_t sum = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    sum += static_cast<std::uint64_t>((u128{static_cast<std::uint32_t>(x)} * k) >> 64);
  }
  return sum;
}

[[gnu::noinline]] std::uint64_t runtime_naive(std::uint64_t n, std::uint64_t c,
                                              unsigned a) {
  std::uint64_t sum = 0;
  for (std::uint64_t x = 0; x < n; ++x) {
    sum += static_cast<std::uint64_t>((u128{static_cast<std::uint32_t>(x)} * c) >> a);
  }
  return sum;
}

std::uint64_t run_once(std::uint32_t d, BenchVariant v, std::uint64_t n,
                       LoopFn fn) {
  if (fn != nullptr) return fn(n);
  const VariantRequest request = v == BenchVariant::gm     ? VariantRequest::gm
                                 : v == BenchVariant::wide ? VariantRequest::wide
                                                           : VariantRequest::naive;
  const Strategy s = lower(d, kW32, request).front();
  switch (v) {
    case BenchVariant::gm: {
      const auto& g = std::get<GmThreeShift>(s);
      return runtime_gm(n, g.c_lo, g.s);
    }
    case BenchVariant::wide:
      return runtime_wide(n, std::get<WideMulHi>(s).k);
    case BenchVariant::naive: {
      const auto& nv = std::get<NaiveWideShift>(s);
      return runtime_naive(n, nv.c, nv.a);
    }
  }
  return 0;
}

void summarize(VariantTiming& t) {
  const double n = static_cast<double>(t.seconds.size());
  t.mean = std::accumulate(t.seconds.begin(), t.seconds.end(), 0.0) / n;
  double ss = 0;
  for (double v : t.seconds) ss += (v - t.mean) * (v - t.mean);
  t.stddev = t.seconds.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
}

}  // namespace

BenchVariant parse_bench_variant(std::string_view text) {
  if (text == "gm") return BenchVariant::gm;
  if (text == "wide") return BenchVariant::wide;
  if (text == "naive") return BenchVariant::naive;
  throw Error(Errc::unsupported_variant,
              "unknown bench variant '" + std::string(text) +
                  "' (expected gm, wide or naive)");
}

std::string_view bench_variant_name(BenchVariant v) noexcept {
  switch (v) {
    case BenchVariant::gm:
      return "gm";
    case BenchVariant::wide:
      return "wide";
    case BenchVariant::naive:
      return "naive";
  }
  return "?";
}

double BenchResult::total_mean(BenchVariant v) const {
  double total = 0;
  for (const DivisorBench& run : runs) {
    for (const VariantTiming& t : run.timings) {
      if (t.variant == v) total += t.mean;
    }
  }
  return total;
}

std::optional<double> BenchResult::ratio_vs_gm(BenchVariant v) const {
  auto has = [this](BenchVariant x) {
    for (BenchVariant c : config.variants) {
      if (c == x) return true;
    }
    return false;
  };
  if (!has(BenchVariant::gm) || !has(v)) return std::nullopt;
  const double base = total_mean(BenchVariant::gm);
  if (base <= 0) return std::nullopt;
  return total_mean(v) / base;
}

BenchResult run_bench(const BenchConfig& config) {
  if (config.n == 0 || config.n > (std::uint64_t{1} << 32)) {
    throw Error(Errc::invalid_domain,
                "bench iteration count must be in [1, 2^32]");
  }
  if (config.repeat == 0) {
    throw Error(Errc::invalid_domain, "bench repeat count must be positive");
  }
  if (config.divisors.empty() || config.variants.empty()) {
    throw Error(Errc::invalid_domain, "bench needs divisors and variants");
  }

  BenchResult result;
  result.config = config;
  for (std::uint32_t d : config.divisors) {
    if (classify(d, kW32) != DivisorCase::mul_w_plus_1_bit) {
      throw Error(Errc::unsupported_variant,
                  "bench divisor " + std::to_string(d) +
                      " does not need a 33-bit multiplier");
    }
    DivisorBench run;
    run.d = d;
    run.compile_time_constants = static_loop_for(d, BenchVariant::gm) != nullptr;
    for (BenchVariant v : config.variants) {
      run.timings.push_back(VariantTiming{v, 0, {}, 0, 0});
    }

    const std::size_t nv = run.timings.size();
    for (unsigned r = 0; r < config.repeat; ++r) {
      for (std::size_t i = 0; i < nv; ++i) {
        VariantTiming& t = run.timings[(i + r) % nv];
        const LoopFn fn = static_loop_for(d, t.variant);
        const auto start = std::chrono::steady_clock::now();
        const std::uint64_t sum = run_once(d, t.variant, config.n, fn);
        const auto stop = std::chrono::steady_clock::now();
        t.seconds.push_back(std::chrono::duration<double>(stop - start).count());
        t.checksum = sum;
      }
    }
    for (VariantTiming& t : run.timings) summarize(t);
    for (const VariantTiming& t : run.timings) {
      if (t.checksum != run.timings.front().checksum) {
        throw Error(Errc::bench_checksum,
                    "checksum mismatch for d=" + std::to_string(d) + ": " +
                        std::string(bench_variant_name(t.variant)) + "=" +
                        std::to_string(t.checksum) + " vs " +
                        std::string(bench_variant_name(
                            run.timings.front().variant)) +
                        "=" + std::to_string(run.timings.front().checksum));
      }
    }
    result.runs.push_back(std::move(run));
  }
  return result;
}

}  // namespace divconst
