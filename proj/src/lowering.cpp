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

#include "divconst/lowering.hpp"

#include <sstream>

#include "divconst/magic.hpp"

namespace divconst {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << "0x" << std::hex << v;
  return os.str();
}

Strategy make_gm(const MagicResult& m) {
  const unsigned w = m.width.bits();
  return GmThreeShift{m.c - (std::uint64_t{1} << w), m.a - (w + 1), m.a};
}

Strategy make_wide(const MagicResult& m) {
  const unsigned w2 = 2 * m.width.bits();
  // k = c * 2^{2w-a}; w+1 <= a <= 2w-1 keeps k below 2^{2w}.
  const u128 k = u128{m.c} << (w2 - m.a);
  if (m.a < m.width.bits() + 1 || m.a > w2 - 1 || (k >> w2) != 0) {
    throw Error(Errc::lowering_invariant,
                "wide high-multiply constant does not fit 2w bits for d=" +
                    std::to_string(m.d));
  }
  return WideMulHi{static_cast<std::uint64_t>(k), m.d, m.a};
}

}  // namespace

std::string case_label(DivisorCase kind, Width width) {
  switch (kind) {
    case DivisorCase::identity:
      return "identity";
    case DivisorCase::power_of_two:
      return "pow2";
    case DivisorCase::large_divisor:
      return "large";
    case DivisorCase::mul_w_bit:
      return "mul" + std::to_string(width.bits());
    case DivisorCase::mul_w_plus_1_bit:
      return "mul" + std::to_string(width.bits() + 1);
  }
  return "?";
}

VariantRequest parse_variant_request(std::string_view text) {
  if (text == "auto") return VariantRequest::automatic;
  if (text == "gm") return VariantRequest::gm;
  if (text == "wide") return VariantRequest::wide;
  if (text == "naive") return VariantRequest::naive;
  if (text == "all") return VariantRequest::all;
  throw Error(Errc::unsupported_variant,
              "unknown variant '" + std::string(text) +
                  "' (expected auto, gm, wide, naive or all)");
}

std::string_view variant_request_name(VariantRequest request) noexcept {
  switch (request) {
    case VariantRequest::automatic:
      return "auto";
    case VariantRequest::gm:
      return "gm";
    case VariantRequest::wide:
      return "wide";
    case VariantRequest::naive:
      return "naive";
    case VariantRequest::all:
      return "all";
  }
  return "?";
}

std::string_view strategy_name(const Strategy& s) noexcept {
  return std::visit(
      overloaded{
          [](const Identity&) { return std::string_view("identity"); },
          [](const Shift&) { return std::string_view("shift"); },
          [](const CompareSelect&) { return std::string_view("compare"); },
          [](const MulShift&) { return std::string_view("mul"); },
          [](const GmThreeShift&) { return std::string_view("gm"); },
          [](const WideMulHi&) { return std::string_view("wide"); },
          [](const NaiveWideShift&) { return std::string_view("naive"); },
      },
      s);
}

std::string describe(const Strategy& s) {
  return std::visit(
      overloaded{
          [](const Identity&) { return std::string(); },
          [](const Shift& v) { return "k=" + std::to_string(v.k); },
          [](const CompareSelect& v) { return "d=" + hex(v.d); },
          [](const MulShift& v) {
            return "c=" + hex(v.c) + " a=" + std::to_string(v.a);
          },
          [](const GmThreeShift& v) {
            return "c_lo=" + hex(v.c_lo) + " s=" + std::to_string(v.s) +
                   " a=" + std::to_string(v.a);
          },
          [](const WideMulHi& v) {
            return "k=" + hex(v.k) + " a=" + std::to_string(v.a);
          },
          [](const NaiveWideShift& v) {
            return "c=" + hex(v.c) + " a=" + std::to_string(v.a);
          },
      },
      s);
}

DivisorCase classify(std::uint64_t d, Width width) {
  detail::check_divisor_range(d, width);
  if (d == 1) return DivisorCase::identity;
  if (is_power_of_two(d)) return DivisorCase::power_of_two;
  if (d > width.max() / 2) return DivisorCase::large_divisor;
  return compute_magic(d, width).c_bits > width.bits()
             ? DivisorCase::mul_w_plus_1_bit
             : DivisorCase::mul_w_bit;
}

std::vector<Strategy> lower(std::uint64_t d, Width width,
                            VariantRequest request) {
  const DivisorCase kind = classify(d, width);
  const bool generic = request == VariantRequest::automatic ||
                       request == VariantRequest::all;
  if (kind != DivisorCase::mul_w_plus_1_bit && !generic) {
    throw Error(Errc::unsupported_variant,
                "variant '" + std::string(variant_request_name(request)) +
                    "' applies only to the " + std::to_string(width.bits() + 1) +
                    "-bit multiplier case; d=" + std::to_string(d) + " is " +
                    case_label(kind, width));
  }

  switch (kind) {
    case DivisorCase::identity:
      return {Identity{}};
    case DivisorCase::power_of_two:
      return {Shift{static_cast<unsigned>(std::countr_zero(d))}};
    case DivisorCase::large_divisor:
      return {CompareSelect{d}};
    case DivisorCase::mul_w_bit: {
      const MagicResult m = compute_magic(d, width);
      return {MulShift{m.c, m.a}};
    }
    case DivisorCase::mul_w_plus_1_bit:
      break;
  }

  const MagicResult m = compute_magic(d, width);
  switch (request) {
    case VariantRequest::automatic:
    case VariantRequest::wide:
      return {make_wide(m)};
    case VariantRequest::gm:
      return {make_gm(m)};
    case VariantRequest::naive:
      return {NaiveWideShift{m.c, m.a}};
    case VariantRequest::all:
      return {make_gm(m), make_wide(m), NaiveWideShift{m.c, m.a}};
  }
  return {};
}

// ---------------------------------------------------------------------------

std::string_view mnemonic_name(Mnemonic m) noexcept {
  switch (m) {
    case Mnemonic::load_imm:
      return "load_imm";
    case Mnemonic::mul_wide:
      return "mul_wide";
    case Mnemonic::mul_hi:
      return "mul_hi";
    case Mnemonic::shr:
      return "shr";
    case Mnemonic::shrd:
      return "shrd";
    case Mnemonic::sub:
      return "sub";
    case Mnemonic::add:
      return "add";
    case Mnemonic::cmp_select:
      return "cmp_select";
    case Mnemonic::take_hi:
      return "take_hi";
  }
  return "?";
}

std::size_t InstrSeq::append(AbstractInstr instr) {
  for (std::size_t dep : instr.deps) {
    if (dep >= instrs_.size()) {
      throw Error(Errc::lowering_invariant,
                  "instruction dependency " + std::to_string(dep) +
                      " does not precede instruction " +
                      std::to_string(instrs_.size()));
    }
  }
  instrs_.push_back(std::move(instr));
  return instrs_.size() - 1;
}

std::string InstrSeq::to_string() const {
  std::string out;
  for (const AbstractInstr& in : instrs_) {
    if (!out.empty()) out += ',';
    out += mnemonic_name(in.op);
    switch (in.op) {
      case Mnemonic::load_imm:
        out += '(' + hex(in.imm) + ')';
        break;
      case Mnemonic::shr:
      case Mnemonic::shrd:
        out += '(' + std::to_string(in.imm) + ')';
        break;
      default:
        break;
    }
  }
  return out;
}

InstrSeq to_instr_seq(const Strategy& s) {
  InstrSeq seq;
  auto add = [&seq](Mnemonic op, std::uint64_t imm,
                    std::vector<std::size_t> deps, bool in_loop = true) {
    return seq.append(AbstractInstr{op, imm, std::move(deps), in_loop});
  };
  std::visit(
      overloaded{
          [](const Identity&) {},
          [&](const Shift& v) { add(Mnemonic::shr, v.k, {}); },
          [&](const CompareSelect& v) {
            const auto imm = add(Mnemonic::load_imm, v.d, {}, false);
            add(Mnemonic::cmp_select, 0, {imm});
          },
          [&](const MulShift& v) {
            const auto imm = add(Mnemonic::load_imm, v.c, {}, false);
            const auto mul = add(Mnemonic::mul_wide, 0, {imm});
            add(Mnemonic::shr, v.a, {mul});
          },
          [&](const GmThreeShift& v) {
            const auto imm = add(Mnemonic::load_imm, v.c_lo, {}, false);
            const auto mul = add(Mnemonic::mul_wide, 0, {imm});
            const auto y = add(Mnemonic::take_hi, 0, {mul});
            const auto diff = add(Mnemonic::sub, 0, {y});
            const auto half = add(Mnemonic::shr, 1, {diff});
            const auto sum = add(Mnemonic::add, 0, {half, y});
            if (v.s != 0) add(Mnemonic::shr, v.s, {sum});
          },
          [&](const WideMulHi& v) {
            const auto imm = add(Mnemonic::load_imm, v.k, {}, false);
            add(Mnemonic::mul_hi, 0, {imm});
          },
          [&](const NaiveWideShift& v) {
            const auto imm = add(Mnemonic::load_imm, v.c, {}, false);
            const auto mul = add(Mnemonic::mul_hi, 0, {imm});
            add(Mnemonic::shrd, v.a, {mul});
          },
      },
      s);
  return seq;
}

}  // namespace divconst
