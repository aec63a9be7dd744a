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

#include "divconst/error.hpp"

namespace divconst {

/// Bit width w of the unsigned dividend domain [0, M], M = 2^w - 1.
class Width {
 public:
  constexpr Width() = default;

  constexpr explicit Width(unsigned bits) : bits_(bits) {
    if (bits != 8 && bits != 16 && bits != 32) {
      throw Error(Errc::unsupported_width,
                  "unsupported width " + std::to_string(bits) +
                      " (expected 8, 16 or 32)");
    }
  }

  constexpr unsigned bits() const noexcept { return bits_; }
  constexpr std::uint64_t max() const noexcept {
    return (std::uint64_t{1} << bits_) - 1;
  }
  /// Number of dividends, M + 1.
  constexpr std::uint64_t domain_size() const noexcept {
    return std::uint64_t{1} << bits_;
  }

  friend constexpr bool operator==(Width, Width) = default;

 private:
  unsigned bits_ = 32;
};

}  // namespace divconst
