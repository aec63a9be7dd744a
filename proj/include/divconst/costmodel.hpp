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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "divconst/lowering.hpp"

namespace divconst {

struct InstrCost {
  double latency = 1;               // cycles
  double reciprocal_throughput = 1; // cycles per instruction

  friend bool operator==(const InstrCost&, const InstrCost&) = default;
};

/// Per-mnemonic (latency, reciprocal throughput). Hoisted load_imm never
/// needs an entry.
class CostTable {
 public:
  explicit CostTable(std::string name = "custom") : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  /// Throws Error(duplicate_entry) if `m` already has an entry and
  /// Error(parse_error) if the cost breaks latency >= 1 or throughput > 0.
  void set(Mnemonic m, InstrCost cost);

  std::optional<InstrCost> find(Mnemonic m) const;
  /// Throws Error(unknown_mnemonic) naming the mnemonic.
  InstrCost at(Mnemonic m) const;

  std::size_t size() const noexcept { return entries_.size(); }

  /// Skylake-X figures: add/sub (1, 0.25), shr (1, 0.5), imul (3, 1),
  /// shrd (3, 1). take_hi is priced as shr because the three-shift sequence
  /// extracts the high half of its 64-bit product with a real shift;
  /// cmp_select is cmp + setcc.
  static CostTable skylake_x();

 private:
  std::string name_;
  std::map<Mnemonic, InstrCost> entries_;
};

/// Line format: `<mnemonic> <latency> <reciprocal_throughput>`, `#` starts a
/// comment. `imul` sets mul_wide and mul_hi; `shrd` sets the funnel shift.
CostTable parse_cost_table(std::string_view text, std::string name = "custom");
CostTable load_cost_table(const std::filesystem::path& path);

struct CostEstimate {
  double latency = 0;     // longest dependency chain of in-loop instructions
  double throughput = 0;  // sum of reciprocal throughputs of in-loop instructions
  std::size_t in_loop = 0;
};

/// Dependency-chain sum, not a pipeline simulation. Out-of-loop (hoisted)
/// instructions contribute nothing.
CostEstimate estimate(const InstrSeq& seq, const CostTable& table);

}  // namespace divconst
