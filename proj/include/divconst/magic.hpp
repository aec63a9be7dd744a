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

// Magic constants for unsigned division by an invariant divisor.
//
// For a divisor d and dividends x in [0, M], a pair (c, a) with
// c = ceil(2^a / d) and e = c*d - 2^a satisfies floor(x/d) = floor(x*c / 2^a)
// for every x whenever e * M_d < 2^a, where M_d is the largest x <= M with
// x mod d = d - 1. compute_magic returns the pair with the smallest such a.
//
// Everything here is constexpr so specialized kernels can fold the constants
// at compile time.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

#include "divconst/error.hpp"
#include "divconst/width.hpp"

namespace divconst {

/// Working integer type for the magic arithmetic. e*M_d < 2^{2w} and
/// 2^a <= 2^{2w} need at least 2w + 2 bits.
__extension__ typedef unsigned __int128 u128;
static_assert(sizeof(u128) * 8 >= 2 * 32 + 2,
              "magic arithmetic needs 2w+2 bits at w = 32");

struct MagicResult {
  std::uint64_t d = 0;
  Width width;
  std::uint64_t c = 0;
  unsigned a = 0;
  std::uint64_t e = 0;    // c*d - 2^a
  std::uint64_t m_d = 0;  // largest x <= M with x mod d == d-1
  unsigned c_bits = 0;

  friend constexpr bool operator==(const MagicResult&,
                                   const MagicResult&) = default;
};

constexpr bool is_power_of_two(std::uint64_t v) noexcept {
  return std::has_single_bit(v);
}

/// ceil(log2 v) for v >= 1.
constexpr unsigned ceil_log2(std::uint64_t v) noexcept {
  return v <= 1 ? 0u : static_cast<unsigned>(std::bit_width(v - 1));
}

namespace detail {

constexpr void check_divisor_range(std::uint64_t d, Width width) {
  if (d == 0) {
    throw Error(Errc::invalid_divisor, "divisor must be nonzero");
  }
  if (d > width.max()) {
    throw Error(Errc::out_of_range,
                "divisor " + std::to_string(d) + " exceeds the " +
                    std::to_string(width.bits()) + "-bit dividend range");
  }
}

}  // namespace detail

/// M_d = floor((M+1)/d)*d - 1.
constexpr std::uint64_t max_residue(std::uint64_t d, Width width) {
  detail::check_divisor_range(d, width);
  return (width.domain_size() / d) * d - 1;
}

/// True iff c*d >= 2^a and (c*d - 2^a) * M_d < 2^a, evaluated exactly.
constexpr bool theorem_holds(std::uint64_t d, std::uint64_t c, unsigned a,
                             Width width) noexcept {
  if (d == 0 || c == 0 || d > width.max()) return false;
  // c*d < 2^96, so any larger power of two already breaks c*d >= 2^a.
  if (a >= 96) return false;
  const u128 pow = u128{1} << a;
  const u128 cd = u128{c} * d;
  if (cd < pow) return false;
  const u128 m_d = (width.domain_size() / d) * d - 1;
  return (cd - pow) * m_d < pow;
}

constexpr MagicResult compute_magic(std::uint64_t d, Width width) {
  detail::check_divisor_range(d, width);
  if (d == 1 || is_power_of_two(d)) {
    throw Error(Errc::invalid_divisor,
                "divisor " + std::to_string(d) +
                    " is 1 or a power of two; use shift lowering");
  }
  const std::uint64_t m_d = max_residue(d, width);
  // d is not a power of two, so e >= 1 for every a and e*M_d < 2^a needs
  // 2^a > M_d. Nothing below bit_width(M_d) can succeed.
  unsigned a = ceil_log2(d);
  a = std::max(a, static_cast<unsigned>(std::bit_width(m_d)));
  const unsigned a_limit = width.bits() + ceil_log2(d);
  for (; a <= a_limit; ++a) {
    const u128 pow = u128{1} << a;
    const u128 c = (pow + d - 1) / d;
    const u128 e = c * d - pow;
    if (e * m_d < pow) {
      MagicResult r;
      r.d = d;
      r.width = width;
      r.c = static_cast<std::uint64_t>(c);
      r.a = a;
      r.e = static_cast<std::uint64_t>(e);
      r.m_d = m_d;
      r.c_bits = static_cast<unsigned>(std::bit_width(r.c));
      if (r.c_bits > width.bits() + 1) {
        throw Error(Errc::lowering_invariant,
                    "magic multiplier exceeds w+1 bits for d=" +
                        std::to_string(d));
      }
      return r;
    }
  }
  // Unreachable: a = w + ceil(log2 d) always satisfies the bound.
  throw Error(Errc::lowering_invariant,
              "no magic constant found for d=" + std::to_string(d));
}

}  // namespace divconst
