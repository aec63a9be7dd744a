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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "divconst/width.hpp"

namespace divconst {

enum class DivisorCase {
  identity,          // d == 1
  power_of_two,      // d == 2^k
  large_divisor,     // d > floor(M/2), quotient is 0 or 1
  mul_w_bit,         // magic multiplier fits in w bits
  mul_w_plus_1_bit,  // magic multiplier needs w+1 bits
};

/// Short label used in CLI output: identity, pow2, large, mul<w>, mul<w+1>.
std::string case_label(DivisorCase kind, Width width);

enum class VariantRequest { automatic, gm, wide, naive, all };

VariantRequest parse_variant_request(std::string_view text);
std::string_view variant_request_name(VariantRequest request) noexcept;

// Strategy variants. Shift amounts are in bits; constants are unsigned.

struct Identity {
  friend constexpr bool operator==(const Identity&, const Identity&) = default;
};

struct Shift {
  unsigned k = 0;
  friend constexpr bool operator==(const Shift&, const Shift&) = default;
};

struct CompareSelect {
  std::uint64_t d = 0;
  friend constexpr bool operator==(const CompareSelect&,
                                   const CompareSelect&) = default;
};

/// q = (x * c) >> a with a w-bit c.
struct MulShift {
  std::uint64_t c = 0;
  unsigned a = 0;
  friend constexpr bool operator==(const MulShift&, const MulShift&) = default;
};

/// Three-shift sequence for a (w+1)-bit multiplier c = 2^w + c_lo:
///   y = (x * c_lo) >> w;  q = (((x - y) >> 1) + y) >> s,  s = a - (w+1).
struct GmThreeShift {
  std::uint64_t c_lo = 0;
  unsigned s = 0;
  unsigned a = 0;
  friend constexpr bool operator==(const GmThreeShift&,
                                   const GmThreeShift&) = default;
};

/// Single high multiply: q = (x * k) >> 2w with k = c * 2^{2w-a}.
struct WideMulHi {
  std::uint64_t k = 0;
  std::uint64_t d = 0;
  unsigned a = 0;
  friend constexpr bool operator==(const WideMulHi&,
                                   const WideMulHi&) = default;
};

/// Full (2w+1)-bit product followed by an a-bit funnel shift.
struct NaiveWideShift {
  std::uint64_t c = 0;
  unsigned a = 0;
  friend constexpr bool operator==(const NaiveWideShift&,
                                   const NaiveWideShift&) = default;
};

using Strategy = std::variant<Identity, Shift, CompareSelect, MulShift,
                              GmThreeShift, WideMulHi, NaiveWideShift>;

/// identity, shift, compare, mul, gm, wide, naive.
std::string_view strategy_name(const Strategy& s) noexcept;

/// key=value rendering of the strategy parameters, e.g. "k=0x... a=35".
std::string describe(const Strategy& s);

DivisorCase classify(std::uint64_t d, Width width);

/// Lowers d for the requested variant. gm, wide and naive apply only to the
/// (w+1)-bit multiplier case; `all` returns every applicable variant.
std::vector<Strategy> lower(std::uint64_t d, Width width,
                            VariantRequest request = VariantRequest::automatic);

// ---------------------------------------------------------------------------
// Abstract instruction sequences

enum class Mnemonic {
  load_imm,
  mul_wide,  // w x w -> 2w
  mul_hi,    // 2w x 2w -> high 2w
  shr,
  shrd,      // double-width funnel shift
  sub,
  add,
  cmp_select,
  take_hi,
};

std::string_view mnemonic_name(Mnemonic m) noexcept;

struct AbstractInstr {
  Mnemonic op = Mnemonic::add;
  std::uint64_t imm = 0;           // constant or shift amount
  std::vector<std::size_t> deps;   // indices of earlier instructions
  bool in_loop = true;             // false for hoisted constant loads

  friend bool operator==(const AbstractInstr&, const AbstractInstr&) = default;
};

/// Straight-line DAG; every dependency points at an earlier instruction.
/// The dividend x is an implicit input and never listed.
class InstrSeq {
 public:
  /// Returns the index of the appended instruction. Throws if a dependency
  /// does not refer to an earlier entry.
  std::size_t append(AbstractInstr instr);

  std::span<const AbstractInstr> instrs() const noexcept { return instrs_; }
  std::size_t size() const noexcept { return instrs_.size(); }
  bool empty() const noexcept { return instrs_.empty(); }
  const AbstractInstr& operator[](std::size_t i) const { return instrs_[i]; }

  std::string to_string() const;

 private:
  std::vector<AbstractInstr> instrs_;
};

InstrSeq to_instr_seq(const Strategy& s);

}  // namespace divconst
