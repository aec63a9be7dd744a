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
#include <string>
#include <variant>

#include "divconst/width.hpp"

namespace divconst {

/// Every divisor in [2, 2^{w-1} - 1].
struct CensusFull {};
/// n divisors drawn uniformly (with replacement) from [2, 2^{w-1} - 1].
struct CensusSample {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};
using CensusDomain = std::variant<CensusFull, CensusSample>;

struct CensusReport {
  Width width;
  CensusDomain domain;
  std::uint64_t divisors = 0;  // population size
  std::uint64_t power_of_two = 0;
  std::uint64_t fits_w = 0;          // multiplier fits w bits
  std::uint64_t needs_w_plus_1 = 0;  // multiplier needs w+1 bits

  /// Shares of the non-power-of-two population; these two sum to 1.
  double fraction_fits() const noexcept;
  double fraction_wide() const noexcept;
  /// (w+1)-bit share with powers of two kept in the denominator.
  double fraction_wide_of_all() const noexcept;
};

CensusReport run_census(Width width, const CensusDomain& domain,
                        unsigned jobs = 1);

/// Aligned human-readable table.
std::string format_census_text(const CensusReport& report);

/// One `class=<name> count=<n> fraction=<f>` line per class.
std::string format_census_lines(const CensusReport& report);

}  // namespace divconst
