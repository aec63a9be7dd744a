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

#include "divconst/census.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <vector>

#include "divconst/error.hpp"
#include "divconst/lowering.hpp"
#include "parallel.hpp"

namespace divconst {
namespace {

constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;

struct Counts {
  std::uint64_t power_of_two = 0;
  std::uint64_t fits_w = 0;
  std::uint64_t needs_w_plus_1 = 0;

  void add(DivisorCase kind) {
    switch (kind) {
      case DivisorCase::power_of_two:
        ++power_of_two;
        break;
      case DivisorCase::mul_w_bit:
        ++fits_w;
        break;
      case DivisorCase::mul_w_plus_1_bit:
        ++needs_w_plus_1;
        break;
      default:
        // Unreachable for d in [2, 2^{w-1} - 1].
        throw Error(Errc::invalid_domain, "census divisor outside mul range");
    }
  }
};

std::string format_fraction(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", f);
  return buf;
}

}  // namespace

double CensusReport::fraction_fits() const noexcept {
  const std::uint64_t n = fits_w + needs_w_plus_1;
  return n == 0 ? 0.0 : static_cast<double>(fits_w) / n;
}

double CensusReport::fraction_wide() const noexcept {
  const std::uint64_t n = fits_w + needs_w_plus_1;
  return n == 0 ? 0.0 : static_cast<double>(needs_w_plus_1) / n;
}

double CensusReport::fraction_wide_of_all() const noexcept {
  return divisors == 0 ? 0.0 : static_cast<double>(needs_w_plus_1) / divisors;
}

CensusReport run_census(Width width, const CensusDomain& domain,
                        unsigned jobs) {
  const std::uint64_t hi = (std::uint64_t{1} << (width.bits() - 1)) - 1;
  const Width w = width;

  std::vector<Counts> parts;
  std::uint64_t population = 0;
  if (std::holds_alternative<CensusFull>(domain)) {
    population = hi - 1;  // [2, hi]
    const std::uint64_t chunks = (population + kChunk - 1) / kChunk;
    parts = detail::run_chunks<Counts>(chunks, jobs, [&](std::uint64_t i) {
      Counts c;
      const std::uint64_t first = 2 + i * kChunk;
      const std::uint64_t last = std::min(hi, first + kChunk - 1);
      for (std::uint64_t d = first; d <= last; ++d) c.add(classify(d, w));
      return c;
    });
  } else {
    const auto& sample = std::get<CensusSample>(domain);
    if (sample.n == 0) {
      throw Error(Errc::invalid_domain, "census sample size must be positive");
    }
    population = sample.n;
    // Draws happen up front, in order, so they do not depend on `jobs`.
    std::vector<std::uint64_t> divisors(sample.n);
    std::mt19937_64 rng(sample.seed);
    for (auto& d : divisors) {
      do {
        d = rng() & hi;
      } while (d < 2);
    }
    const std::uint64_t chunks = (sample.n + kChunk - 1) / kChunk;
    parts = detail::run_chunks<Counts>(chunks, jobs, [&](std::uint64_t i) {
      Counts c;
      const std::uint64_t first = i * kChunk;
      const std::uint64_t last = std::min<std::uint64_t>(sample.n, first + kChunk);
      for (std::uint64_t j = first; j < last; ++j) {
        c.add(classify(divisors[j], w));
      }
      return c;
    });
  }

  CensusReport report;
  report.width = width;
  report.domain = domain;
  report.divisors = population;
  for (const Counts& c : parts) {
    report.power_of_two += c.power_of_two;
    report.fits_w += c.fits_w;
    report.needs_w_plus_1 += c.needs_w_plus_1;
  }
  return report;
}

std::string format_census_text(const CensusReport& r) {
  const unsigned w = r.width.bits();
  std::string domain;
  if (const auto* s = std::get_if<CensusSample>(&r.domain)) {
    domain = "sample n=" + std::to_string(s->n) +
             " seed=" + std::to_string(s->seed);
  } else {
    domain = "full";
  }
  const std::uint64_t hi = (std::uint64_t{1} << (w - 1)) - 1;
  const std::uint64_t non_pow2 = r.fits_w + r.needs_w_plus_1;
  const double all = r.divisors == 0 ? 1.0 : static_cast<double>(r.divisors);

  char line[160];
  std::string out;
  std::snprintf(line, sizeof line, "census width=%u divisors=[2, %llu] %s\n",
                w, static_cast<unsigned long long>(hi), domain.c_str());
  out += line;
  std::snprintf(line, sizeof line, "%-22s %14s %12s %12s\n", "class", "count",
                "of non-pow2", "of all");
  out += line;
  auto row = [&](const std::string& name, std::uint64_t count,
                 bool in_non_pow2) {
    const std::string rel =
        in_non_pow2 && non_pow2 != 0
            ? format_fraction(static_cast<double>(count) / non_pow2)
            : std::string("-");
    std::snprintf(line, sizeof line, "%-22s %14llu %12s %12s\n", name.c_str(),
                  static_cast<unsigned long long>(count), rel.c_str(),
                  format_fraction(count / all).c_str());
    out += line;
  };
  row("power_of_two", r.power_of_two, false);
  row("c_fits_" + std::to_string(w) + "_bits", r.fits_w, true);
  row("c_needs_" + std::to_string(w + 1) + "_bits", r.needs_w_plus_1, true);
  return out;
}

std::string format_census_lines(const CensusReport& r) {
  const unsigned w = r.width.bits();
  const double all = r.divisors == 0 ? 1.0 : static_cast<double>(r.divisors);
  std::string out;
  auto line = [&](const std::string& name, std::uint64_t count,
                  double fraction) {
    out += "class=" + name + " count=" + std::to_string(count) +
           " fraction=" + format_fraction(fraction) + "\n";
  };
  line("power_of_two", r.power_of_two, r.power_of_two / all);
  line("c_fits_" + std::to_string(w) + "_bits", r.fits_w, r.fraction_fits());
  line("c_needs_" + std::to_string(w + 1) + "_bits", r.needs_w_plus_1,
       r.fraction_wide());
  out += "denominator=non_power_of_two count=" +
         std::to_string(r.fits_w + r.needs_w_plus_1) +
         " wide_fraction_of_all=" + format_fraction(r.fraction_wide_of_all()) +
         "\n";
  return out;
}

}  // namespace divconst
