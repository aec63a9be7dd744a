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

#include <string>
#include <string_view>

#include "divconst/lowering.hpp"
#include "divconst/width.hpp"

namespace divconst {

enum class EmitTarget { c_source, x86_64, aarch64 };

/// Accepts c, x86-64 and aarch64 (plus x86_64 / c_source spellings).
EmitTarget parse_emit_target(std::string_view text);
std::string_view emit_target_name(EmitTarget target) noexcept;

/// Renders s as a function `name` computing floor(x / d) for a w-bit x.
///
/// c_source: a free-standing C function `u<w> name(u<w> x)` using exact-width
///   types; 128-bit products use unsigned __int128 when the compiler has it
///   and a two-partial-product fallback otherwise.
/// x86_64: GNU assembler, Intel syntax, System V ABI (x in edi, q in eax).
/// aarch64: GNU assembler, AAPCS64 (x in w0, q in w0).
///
/// Assembly targets only support w = 32. Output is deterministic.
std::string emit(const Strategy& s, EmitTarget target, std::string_view name,
                 Width width = Width{32});

}  // namespace divconst
