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

// Acceptance gate: runs every criterion at its pinned tolerance and prints one
// PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "divconst/bench.hpp"
#include "divconst/census.hpp"
#include "divconst/costmodel.hpp"
#include "divconst/emitter.hpp"
#include "divconst/evaluator.hpp"
#include "divconst/lowering.hpp"
#include "divconst/magic.hpp"

using namespace divconst;

namespace {

// Tolerances and time limits, in one place.
constexpr double kMagicSeconds = 1e-3;
constexpr double kSmallWidthSeconds = 5.0;
constexpr double kFullSweepSeconds = 30 * 60.0;  // "minutes" on one core
constexpr double kCensusLo = 0.22;
constexpr double kCensusHi = 0.24;
constexpr double kCensusSeconds = 60.0;
constexpr double kCostSeconds = 1.0;
constexpr double kBenchMaxRatio = 1.0;
constexpr double kBenchSeconds = 60.0;
constexpr int kPropertyPairs = 10'000;
constexpr std::uint64_t kPropertySeed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// 1. compute_magic(7, w=32) is c=0x124924925, a=35.
Outcome magic_exactness() {
  const auto start = std::chrono::steady_clock::now();
  const MagicResult m = compute_magic(7, Width{32});
  const double t = seconds_since(start);
  const bool ok = m.c == 0x124924925u && m.a == 35 && t < kMagicSeconds;
  return {ok, "c=" + hex(m.c) + " a=" + std::to_string(m.a) + " time=" +
                  fmt("%.2e", t) + "s (limit " + fmt("%g", kMagicSeconds) + "s)"};
}

// 2. Every d in [1, 255], every x in [0, 255], every applicable variant at w=8.
Outcome small_width_exhaustive() {
  const auto start = std::chrono::steady_clock::now();
  const Width w{8};
  std::uint64_t pairs = 0;
  std::uint64_t strategies = 0;
  std::uint64_t mismatches = 0;
  for (std::uint64_t d = 1; d <= w.max(); ++d) {
    for (const VerifyReport& r : verify(d, w, VariantRequest::all, ExhaustiveDomain{})) {
      ++strategies;
      pairs += r.tested;
      mismatches += r.mismatches;
    }
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && pairs == strategies * 256 && t < kSmallWidthSeconds,
          "strategies=" + std::to_string(strategies) + " pairs=" + std::to_string(pairs) +
              " mismatches=" + std::to_string(mismatches) + " time=" + fmt("%.3f", t) +
              "s (limit " + fmt("%g", kSmallWidthSeconds) + "s)"};
}

// 3. gm and wide over all 2^32 dividends for d in {7, 19, 107}.
Outcome full_width_exhaustive() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (std::uint64_t d : {7u, 19u, 107u}) {
    for (VariantRequest v : {VariantRequest::gm, VariantRequest::wide}) {
      const VerifyReport r = verify(d, Width{32}, v, ExhaustiveDomain{}, jobs()).front();
      ok = ok && r.ok() && r.tested == (std::uint64_t{1} << 32);
      detail += "d=" + std::to_string(d) + "/" + r.variant + ":" +
                std::to_string(r.mismatches) + " ";
    }
  }
  const double t = seconds_since(start);
  ok = ok && t < kFullSweepSeconds;
  return {ok, "mismatches " + detail + "jobs=" + std::to_string(jobs()) + " time=" +
                  fmt("%.1f", t) + "s (limit " + fmt("%g", kFullSweepSeconds) + "s)"};
}

// 4. Sampled census at w=32, n=10^6.
Outcome census_fraction() {
  const auto start = std::chrono::steady_clock::now();
  const CensusReport r = run_census(Width{32}, CensusSample{1'000'000, 1}, jobs());
  const double t = seconds_since(start);
  const double f = r.fraction_wide();
  return {f >= kCensusLo && f <= kCensusHi && t < kCensusSeconds,
          "fraction_33_bit=" + fmt("%.6f", f) + " in [" + fmt("%g", kCensusLo) + ", " +
              fmt("%g", kCensusHi) + "] n=1000000 seed=1 time=" + fmt("%.3f", t) + "s"};
}

// 5. Under skylake-x, wide latency is 3, below gm (7..8) and naive, for every
//    33-bit-case divisor below 2^16.
Outcome cost_ordering() {
  const auto start = std::chrono::steady_clock::now();
  const CostTable table = CostTable::skylake_x();
  const Width w{32};
  std::uint64_t tested = 0;
  std::uint64_t failures = 0;
  double gm_min = 1e9, gm_max = 0;
  for (std::uint64_t d = 3; d < (1u << 16); ++d) {
    if (classify(d, w) != DivisorCase::mul_w_plus_1_bit) continue;
    const auto s = lower(d, w, VariantRequest::all);
    const double gm = estimate(to_instr_seq(s[0]), table).latency;
    const double wide = estimate(to_instr_seq(s[1]), table).latency;
    const double naive = estimate(to_instr_seq(s[2]), table).latency;
    gm_min = std::min(gm_min, gm);
    gm_max = std::max(gm_max, gm);
    ++tested;
    if (!(wide == 3 && gm >= 7 && gm <= 8 && wide < gm && wide < naive)) ++failures;
  }
  const double t = seconds_since(start);
  return {failures == 0 && tested > 0 && t < kCostSeconds,
          "divisors=" + std::to_string(tested) + " violations=" + std::to_string(failures) +
              " wide=3 gm=[" + fmt("%g", gm_min) + ", " + fmt("%g", gm_max) +
              "] time=" + fmt("%.3f", t) + "s"};
}

// 6. Native benchmark: identical checksums, wide not slower than gm.
Outcome bench_ratio() {
  const auto start = std::chrono::steady_clock::now();
  BenchConfig config;  // {7, 19, 107} x {gm, wide}
  const BenchResult r = run_bench(config);  // throws on checksum mismatch
  const double t = seconds_since(start);
  const double ratio = r.ratio_vs_gm(BenchVariant::wide).value_or(1e9);
  std::string detail = "wide/gm=" + fmt("%.3f", ratio) + " (limit " +
                       fmt("%g", kBenchMaxRatio) + ")";
  for (const DivisorBench& run : r.runs) {
    detail += " d=" + std::to_string(run.d) + ":" +
              fmt("%.3f", run.timings[1].mean / run.timings[0].mean);
  }
  detail += " checksums=equal time=" + fmt("%.1f", t) + "s";
  return {ratio <= kBenchMaxRatio && t < kBenchSeconds, detail};
}

// 7. Golden files and the single umulh.
Outcome emitter_golden() {
  struct Case {
    const char* stem;
    std::uint64_t d;
    VariantRequest request;
  };
  const Case cases[] = {
      {"shift_8", 8, VariantRequest::automatic},
      {"compare_0x80000001", 0x80000001u, VariantRequest::automatic},
      {"mul_3", 3, VariantRequest::automatic},
      {"gm_7", 7, VariantRequest::gm},
      {"wide_7", 7, VariantRequest::wide},
  };
  const std::pair<EmitTarget, const char*> targets[] = {
      {EmitTarget::c_source, ".c"},
      {EmitTarget::x86_64, ".x86-64.s"},
      {EmitTarget::aarch64, ".aarch64.s"},
  };
  int matched = 0;
  int total = 0;
  std::string mismatched;
  for (const Case& c : cases) {
    const Strategy s = lower(c.d, Width{32}, c.request).front();
    for (const auto& [target, ext] : targets) {
      ++total;
      const std::string file = std::string(DIVCONST_GOLDEN_DIR) + "/" + c.stem + ext;
      std::ifstream in(file, std::ios::binary);
      std::stringstream golden;
      golden << in.rdbuf();
      if (in && golden.str() == emit(s, target, "udiv" + std::to_string(c.d))) {
        ++matched;
      } else {
        mismatched += std::string(" ") + c.stem + ext;
      }
    }
  }
  const std::string body =
      emit(lower(7, Width{32}, VariantRequest::wide).front(), EmitTarget::aarch64, "udiv7");
  std::size_t umulh = 0;
  for (std::size_t pos = body.find("umulh"); pos != std::string::npos;
       pos = body.find("umulh", pos + 1)) {
    ++umulh;
  }
  return {matched == total && umulh == 1,
          "golden=" + std::to_string(matched) + "/" + std::to_string(total) +
              " aarch64_wide_umulh=" + std::to_string(umulh) +
              (mismatched.empty() ? "" : " mismatched:" + mismatched)};
}

// 8. Seeded properties over 10^4 random (d, x) pairs at w=32.
Outcome properties() {
  const Width w{32};
  std::mt19937_64 rng(kPropertySeed);
  int disagreements = 0, not_minimal = 0, too_wide = 0, overflow = 0;
  for (int i = 0; i < kPropertyPairs; ++i) {
    std::uint64_t d;
    do {
      const unsigned bits = 2 + static_cast<unsigned>(rng() % 31);
      d = rng() & ((std::uint64_t{1} << bits) - 1);
    } while (d < 3 || is_power_of_two(d));
    const std::uint64_t x = rng() & w.max();

    for (const Strategy& s : lower(d, w, VariantRequest::all)) {
      if (eval_strategy(s, x, w) != x / d) ++disagreements;
    }

    const MagicResult m = compute_magic(d, w);
    const std::uint64_t m_d = max_residue(d, w);
    if (m.c >= (std::uint64_t{1} << 33)) ++too_wide;
    // c' = ceil(2^{a-1}/d) must already fail at the largest x = d-1 (mod d).
    const u128 c_prev = ((u128{1} << (m.a - 1)) + d - 1) / d;
    if (((u128{m_d} * c_prev) >> (m.a - 1)) == m_d / d) ++not_minimal;

    if (classify(d, w) == DivisorCase::mul_w_plus_1_bit) {
      const auto g = std::get<GmThreeShift>(lower(d, w, VariantRequest::gm).front());
      for (std::uint64_t v : {x, w.max(), m_d}) {
        const std::uint64_t y = (v * g.c_lo) >> 32;
        if (y > v || ((v - y) >> 1) + y > w.max()) ++overflow;
      }
    }
  }
  return {disagreements == 0 && not_minimal == 0 && too_wide == 0 && overflow == 0,
          "pairs=" + std::to_string(kPropertyPairs) + " seed=" +
              std::to_string(kPropertySeed) + " disagreements=" +
              std::to_string(disagreements) + " non_minimal_a=" +
              std::to_string(not_minimal) + " c_too_wide=" + std::to_string(too_wide) +
              " gm_overflow=" + std::to_string(overflow)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 magic exactness", magic_exactness},
      {"AC2 exhaustive w=8", small_width_exhaustive},
      {"AC3 exhaustive w=32 d in {7,19,107}", full_width_exhaustive},
      {"AC4 census 33-bit fraction", census_fraction},
      {"AC5 cost-model ordering", cost_ordering},
      {"AC6 benchmark wide vs gm", bench_ratio},
      {"AC7 emitter golden files", emitter_golden},
      {"AC8 property suite", properties},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
