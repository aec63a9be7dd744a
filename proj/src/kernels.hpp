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

// Per-variant quotient kernels shared by the evaluator sweeps. Each kernel is
// a small value type with an inline operator() so a sweep over 2^32 inputs
// runs without per-element dispatch.

#include <cstdint>
#include <string>

#include "divconst/error.hpp"
#include "divconst/lowering.hpp"
#include "divconst/magic.hpp"

namespace divconst::detail {

struct IdentityKernel {
  std::uint64_t operator()(std::uint64_t x) const { return x; }
};

struct ShiftKernel {
  unsigned k;
  std::uint64_t operator()(std::uint64_t x) const { return x >> k; }
};

struct CompareKernel {
  std::uint64_t d;
  std::uint64_t operator()(std::uint64_t x) const { return x < d ? 0 : 1; }
};

struct MulShiftKernel {
  std::uint64_t c;
  unsigned a;
  // x < 2^w and c < 2^w, so the product fits 2w bits.
  std::uint64_t operator()(std::uint64_t x) const { return (x * c) >> a; }
};

[[noreturn]] inline void gm_bound_violation(std::uint64_t x, std::uint64_t y,
                                            std::uint64_t t) {
  throw Error(Errc::lowering_invariant,
              "three-shift intermediate out of range at x=" +
                  std::to_string(x) + " (y=" + std::to_string(y) +
                  ", sum=" + std::to_string(t) + ")");
}

struct GmKernel {
  std::uint64_t c_lo;
  unsigned s;
  unsigned w;
  std::uint64_t operator()(std::uint64_t x) const {
    const std::uint64_t y = (x * c_lo) >> w;
    if (y > x) gm_bound_violation(x, y, 0);
    const std::uint64_t t = ((x - y) >> 1) + y;
    if ((t >> w) != 0) gm_bound_violation(x, y, t);
    return t >> s;
  }
};

struct WideKernel {
  std::uint64_t k;
  unsigned w2;
  std::uint64_t operator()(std::uint64_t x) const {
    return static_cast<std::uint64_t>((u128{x} * k) >> w2);
  }
};

struct NaiveKernel {
  std::uint64_t c;
  unsigned a;
  std::uint64_t operator()(std::uint64_t x) const {
    return static_cast<std::uint64_t>((u128{x} * c) >> a);
  }
};

/// Calls f with the kernel matching s.
template <class F>
decltype(auto) with_kernel(const Strategy& s, Width width, F&& f) {
  const unsigned w = width.bits();
  switch (s.index()) {
    case 0:
      return f(IdentityKernel{});
    case 1:
      return f(ShiftKernel{std::get<Shift>(s).k});
    case 2:
      return f(CompareKernel{std::get<CompareSelect>(s).d});
    case 3: {
      const auto& v = std::get<MulShift>(s);
      return f(MulShiftKernel{v.c, v.a});
    }
    case 4: {
      const auto& v = std::get<GmThreeShift>(s);
      return f(GmKernel{v.c_lo, v.s, w});
    }
    case 5:
      return f(WideKernel{std::get<WideMulHi>(s).k, 2 * w});
    default: {
      const auto& v = std::get<NaiveWideShift>(s);
      return f(NaiveKernel{v.c, v.a});
    }
  }
}

}  // namespace divconst::detail
