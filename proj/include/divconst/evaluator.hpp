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
#include <variant>
#include <vector>

#include "divconst/lowering.hpp"
#include "divconst/width.hpp"

namespace divconst {

/// floor(x / d) via the host's divide instruction.
std::uint64_t oracle_div(std::uint64_t x, std::uint64_t d);

/// Bit-exact model of the lowered code. Uses only 2w-bit unsigned arithmetic
/// plus the 2w x 2w -> high 2w product for WideMulHi/NaiveWideShift.
/// Throws Error(lowering_invariant) if a GmThreeShift intermediate leaves
/// the w-bit range.
std::uint64_t eval_strategy(const Strategy& s, std::uint64_t x, Width width);

struct ExhaustiveDomain {};
struct RangeDomain {
  std::uint64_t lo = 0;  // inclusive
  std::uint64_t hi = 0;  // inclusive
};
struct SampleDomain {
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};
using Domain = std::variant<ExhaustiveDomain, RangeDomain, SampleDomain>;

std::string describe(const Domain& domain);

struct Counterexample {
  std::uint64_t x = 0;
  std::uint64_t got = 0;
  std::uint64_t expected = 0;
};

struct VerifyReport {
  std::uint64_t d = 0;
  Width width;
  std::string variant;
  Domain domain;
  std::uint64_t tested = 0;      // number of dividends evaluated
  std::uint64_t mismatches = 0;
  std::optional<Counterexample> first;  // smallest failing x

  bool ok() const noexcept { return mismatches == 0; }
};

/// {0, 1, d-1, d, d+1, M_d-1, M_d, M_d+1, M-1, M} clipped to [0, M], sorted,
/// deduplicated.
std::vector<std::uint64_t> boundary_inputs(std::uint64_t d, Width width);

/// Compares eval_strategy against oracle_div over the domain. Exhaustive and
/// range domains are split into chunks and spread over `jobs` workers; the
/// report does not depend on the worker count.
VerifyReport verify_strategy(std::uint64_t d, Width width, const Strategy& s,
                             const Domain& domain, unsigned jobs = 1);

/// Lowers d per the request and verifies every resulting strategy.
std::vector<VerifyReport> verify(std::uint64_t d, Width width,
                                 VariantRequest request, const Domain& domain,
                                 unsigned jobs = 1);

}  // namespace divconst
