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

#include "divconst/emitter.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "divconst/error.hpp"

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

/// C integer literal typed for a `bits`-wide context.
std::string c_lit(std::uint64_t v, unsigned bits) {
  if (bits > 32) return "UINT64_C(" + hex(v) + ")";
  return hex(v) + "u";
}

void check_symbol(std::string_view name) {
  const bool ok =
      !name.empty() &&
      (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
      std::all_of(name.begin(), name.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
      });
  if (!ok) {
    throw Error(Errc::parse_error,
                "invalid symbol name '" + std::string(name) + "'");
  }
}

std::string header_params(const Strategy& s) {
  std::string p = "strategy=" + std::string(strategy_name(s));
  const std::string params = describe(s);
  if (!params.empty()) p += " " + params;
  return p;
}

// --------------------------------------------------------------------------
// C

std::string emit_c(const Strategy& s, std::string_view name, Width width) {
  const unsigned w = width.bits();
  const std::string ut = "u" + std::to_string(w);
  const std::string wt = "u" + std::to_string(2 * w);
  const std::string ws = std::to_string(w);

  std::ostringstream os;
  os << "/* divconst: " << header_params(s) << " width=" << w << " */\n";
  os << "#include <stdint.h>\n";
  os << "typedef uint" << w << "_t " << ut << ";\n";
  os << "typedef uint" << 2 * w << "_t " << wt << ";\n\n";
  os << ut << " " << name << "(" << ut << " x)\n{\n";

  std::visit(
      overloaded{
          [&](const Identity&) { os << "    return x;\n"; },
          [&](const Shift& v) {
            os << "    return (" << ut << ")(x >> " << v.k << ");\n";
          },
          [&](const CompareSelect& v) {
            os << "    return (" << ut << ")(x >= " << c_lit(v.d, w)
               << ");\n";
          },
          [&](const MulShift& v) {
            os << "    return (" << ut << ")(((" << wt << ")x * "
               << c_lit(v.c, 2 * w) << ") >> " << v.a << ");\n";
          },
          [&](const GmThreeShift& v) {
            os << "    " << ut << " y = (" << ut << ")(((" << wt << ")x * "
               << c_lit(v.c_lo, 2 * w) << ") >> " << ws << ");\n";
            os << "    " << ut << " t = (" << ut << ")(((" << ut
               << ")(x - y) >> 1) + y);\n";
            if (v.s == 0) {
              os << "    return t;\n";
            } else {
              os << "    return (" << ut << ")(t >> " << v.s << ");\n";
            }
          },
          [&](const WideMulHi& v) {
            if (w < 32) {
              // x * k < 2^{3w}; use the 4w-bit type.
              os << "    return (" << ut << ")(((uint" << 4 * w << "_t)x * "
                 << c_lit(v.k, 4 * w) << ") >> " << 2 * w << ");\n";
              return;
            }
            const std::uint64_t k_hi = v.k >> 32;
            const std::uint64_t k_lo = v.k & 0xffffffffu;
            os << "#if defined(__SIZEOF_INT128__)\n";
            os << "    return (" << ut << ")(((unsigned __int128)x * "
               << c_lit(v.k, 64) << ") >> 64);\n";
            os << "#else\n";
            os << "    " << wt << " hi = (" << wt << ")x * " << c_lit(k_hi, 64)
               << ";\n";
            os << "    " << wt << " lo = (" << wt << ")x * " << c_lit(k_lo, 64)
               << ";\n";
            os << "    return (" << ut << ")((hi + (lo >> 32)) >> 32);\n";
            os << "#endif\n";
          },
          [&](const NaiveWideShift& v) {
            if (w < 32) {
              os << "    return (" << ut << ")(((uint" << 4 * w << "_t)x * "
                 << c_lit(v.c, 4 * w) << ") >> " << v.a << ");\n";
              return;
            }
            const std::uint64_t c_lo = v.c & 0xffffffffu;
            os << "#if defined(__SIZEOF_INT128__)\n";
            os << "    return (" << ut << ")(((unsigned __int128)x * "
               << c_lit(v.c, 64) << ") >> " << v.a << ");\n";
            os << "#else\n";
            os << "    " << wt << " hi = (" << wt << ")x + (((" << wt
               << ")x * " << c_lit(c_lo, 64) << ") >> 32);\n";
            os << "    return (" << ut << ")(hi >> " << v.a - 32 << ");\n";
            os << "#endif\n";
          },
      },
      s);
  os << "}\n";
  return os.str();
}

// --------------------------------------------------------------------------
// Assembly

class AsmWriter {
 public:
  AsmWriter(std::string_view comment) : comment_(comment) {}

  void note(const std::string& text) { out_ << comment_ << " " << text << "\n"; }
  void raw(const std::string& text) { out_ << text << "\n"; }
  void op(std::string_view mnemonic, const std::string& operands = {}) {
    out_ << "    " << mnemonic;
    if (!operands.empty()) {
      out_ << std::string(mnemonic.size() < 8 ? 8 - mnemonic.size() : 1, ' ')
           << operands;
    }
    out_ << "\n";
  }
  std::string str() const { return out_.str(); }

 private:
  std::string_view comment_;
  std::ostringstream out_;
};

std::string emit_x86_64(const Strategy& s, std::string_view name) {
  AsmWriter a("#");
  a.note("divconst: " + header_params(s) + " width=32");
  a.note("x86-64, Intel syntax; u32 x in edi, quotient in eax");
  a.raw("    .intel_syntax noprefix");
  a.raw("    .text");
  a.raw("    .globl " + std::string(name));
  a.raw(std::string(name) + ":");
  std::visit(
      overloaded{
          [&](const Identity&) { a.op("mov", "eax, edi"); },
          [&](const Shift& v) {
            a.op("mov", "eax, edi");
            a.op("shr", "eax, " + std::to_string(v.k));
          },
          [&](const CompareSelect& v) {
            a.op("xor", "eax, eax");
            a.op("cmp", "edi, " + hex(v.d));
            a.op("setae", "al");
          },
          [&](const MulShift& v) {
            a.op("mov", "eax, edi");
            a.op("mov", "ecx, " + hex(v.c));
            a.op("imul", "rax, rcx");
            a.op("shr", "rax, " + std::to_string(v.a));
          },
          [&](const GmThreeShift& v) {
            a.op("mov", "eax, edi");
            a.op("mov", "ecx, " + hex(v.c_lo));
            a.op("imul", "rcx, rax");
            a.op("shr", "rcx, 32");
            a.op("sub", "eax, ecx");
            a.op("shr", "eax, 1");
            a.op("add", "eax, ecx");
            if (v.s != 0) a.op("shr", "eax, " + std::to_string(v.s));
          },
          [&](const WideMulHi& v) {
            a.op("mov", "eax, edi");
            a.op("movabs", "rcx, " + hex(v.k));
            a.op("mul", "rcx");
            a.op("mov", "eax, edx");
          },
          [&](const NaiveWideShift& v) {
            a.op("mov", "eax, edi");
            a.op("movabs", "rcx, " + hex(v.c));
            a.op("mul", "rcx");
            a.op("shrd", "rax, rdx, " + std::to_string(v.a));
          },
      },
      s);
  a.op("ret");
  return a.str();
}

/// movz/movk sequence for `value` into register `reg` (w8 or x8 style).
void materialize(AsmWriter& a, const std::string& reg, std::uint64_t value,
                 unsigned bits) {
  bool first = true;
  for (unsigned shift = 0; shift < bits; shift += 16) {
    const std::uint64_t part = (value >> shift) & 0xffff;
    if (part == 0) continue;
    std::string operands = reg + ", #" + hex(part);
    if (shift != 0) operands += ", lsl #" + std::to_string(shift);
    a.op(first ? "movz" : "movk", operands);
    first = false;
  }
  if (first) a.op("mov", reg + ", #0");
}

std::string emit_aarch64(const Strategy& s, std::string_view name) {
  AsmWriter a("//");
  a.note("divconst: " + header_params(s) + " width=32");
  a.note("AArch64; u32 x in w0, quotient in w0");
  a.raw("    .text");
  a.raw("    .globl " + std::string(name));
  a.raw(std::string(name) + ":");
  std::visit(
      overloaded{
          [&](const Identity&) {},
          [&](const Shift& v) {
            a.op("lsr", "w0, w0, #" + std::to_string(v.k));
          },
          [&](const CompareSelect& v) {
            materialize(a, "w8", v.d, 32);
            a.op("cmp", "w0, w8");
            a.op("cset", "w0, hs");
          },
          [&](const MulShift& v) {
            materialize(a, "w8", v.c, 32);
            a.op("umull", "x0, w0, w8");
            a.op("lsr", "x0, x0, #" + std::to_string(v.a));
          },
          [&](const GmThreeShift& v) {
            materialize(a, "w8", v.c_lo, 32);
            a.op("umull", "x8, w0, w8");
            a.op("lsr", "x8, x8, #32");
            a.op("sub", "w9, w0, w8");
            if (v.s == 0) {
              a.op("add", "w0, w8, w9, lsr #1");
            } else {
              a.op("add", "w8, w8, w9, lsr #1");
              a.op("lsr", "w0, w8, #" + std::to_string(v.s));
            }
          },
          [&](const WideMulHi& v) {
            a.op("mov", "w0, w0");
            materialize(a, "x8", v.k, 64);
            a.op("umulh", "x0, x0, x8");
          },
          [&](const NaiveWideShift& v) {
            a.op("mov", "w0, w0");
            materialize(a, "x8", v.c, 64);
            a.op("mul", "x9, x0, x8");
            a.op("umulh", "x10, x0, x8");
            a.op("extr", "x0, x10, x9, #" + std::to_string(v.a));
          },
      },
      s);
  a.op("ret");
  return a.str();
}

}  // namespace

EmitTarget parse_emit_target(std::string_view text) {
  if (text == "c" || text == "c_source") return EmitTarget::c_source;
  if (text == "x86-64" || text == "x86_64") return EmitTarget::x86_64;
  if (text == "aarch64") return EmitTarget::aarch64;
  throw Error(Errc::parse_error, "unknown emit target '" + std::string(text) +
                                     "' (expected c, x86-64 or aarch64)");
}

std::string_view emit_target_name(EmitTarget target) noexcept {
  switch (target) {
    case EmitTarget::c_source:
      return "c";
    case EmitTarget::x86_64:
      return "x86-64";
    case EmitTarget::aarch64:
      return "aarch64";
  }
  return "?";
}

std::string emit(const Strategy& s, EmitTarget target, std::string_view name,
                 Width width) {
  check_symbol(name);
  if (target != EmitTarget::c_source && width.bits() != 32) {
    throw Error(Errc::unsupported_width,
                "assembly targets compute 32-bit division only (got width " +
                    std::to_string(width.bits()) + ")");
  }
  switch (target) {
    case EmitTarget::c_source:
      return emit_c(s, name, width);
    case EmitTarget::x86_64:
      return emit_x86_64(s, name);
    case EmitTarget::aarch64:
      return emit_aarch64(s, name);
  }
  return {};
}

}  // namespace divconst
