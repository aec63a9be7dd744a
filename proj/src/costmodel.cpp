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

#include "divconst/costmodel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "divconst/error.hpp"

namespace divconst {
namespace {

constexpr Mnemonic kAllMnemonics[] = {
    Mnemonic::load_imm, Mnemonic::mul_wide,   Mnemonic::mul_hi,
    Mnemonic::shr,      Mnemonic::shrd,       Mnemonic::sub,
    Mnemonic::add,      Mnemonic::cmp_select, Mnemonic::take_hi,
};

std::vector<Mnemonic> resolve(std::string_view token) {
  if (token == "imul") return {Mnemonic::mul_wide, Mnemonic::mul_hi};
  for (Mnemonic m : kAllMnemonics) {
    if (mnemonic_name(m) == token) return {m};
  }
  return {};
}

bool parse_number(std::string_view token, double& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

void CostTable::set(Mnemonic m, InstrCost cost) {
  if (!(cost.latency >= 1) || !(cost.reciprocal_throughput > 0)) {
    throw Error(Errc::parse_error,
                "cost for " + std::string(mnemonic_name(m)) +
                    " needs latency >= 1 and reciprocal throughput > 0");
  }
  if (!entries_.emplace(m, cost).second) {
    throw Error(Errc::duplicate_entry,
                "duplicate cost entry for " + std::string(mnemonic_name(m)));
  }
}

std::optional<InstrCost> CostTable::find(Mnemonic m) const {
  const auto it = entries_.find(m);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

InstrCost CostTable::at(Mnemonic m) const {
  if (auto cost = find(m)) return *cost;
  throw Error(Errc::unknown_mnemonic, "cost table '" + name_ +
                                          "' has no entry for mnemonic " +
                                          std::string(mnemonic_name(m)));
}

CostTable CostTable::skylake_x() {
  CostTable t("skylake-x");
  t.set(Mnemonic::add, {1, 0.25});
  t.set(Mnemonic::sub, {1, 0.25});
  t.set(Mnemonic::shr, {1, 0.5});
  t.set(Mnemonic::mul_wide, {3, 1});
  t.set(Mnemonic::mul_hi, {3, 1});
  t.set(Mnemonic::shrd, {3, 1});
  t.set(Mnemonic::take_hi, {1, 0.5});
  t.set(Mnemonic::cmp_select, {2, 0.75});
  return t;
}

CostTable parse_cost_table(std::string_view text, std::string name) {
  CostTable table(std::move(name));
  std::istringstream in{std::string(text)};
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const auto where = "line " + std::to_string(lineno) + ": ";
    if (tok.size() != 3) {
      throw Error(Errc::parse_error,
                  where + "expected '<mnemonic> <latency> <throughput>'");
    }
    const std::vector<Mnemonic> targets = resolve(tok[0]);
    if (targets.empty()) {
      throw Error(Errc::unknown_mnemonic, where + "unknown mnemonic " + tok[0]);
    }
    InstrCost cost;
    if (!parse_number(tok[1], cost.latency) ||
        !parse_number(tok[2], cost.reciprocal_throughput)) {
      throw Error(Errc::parse_error, where + "malformed number");
    }
    try {
      for (Mnemonic m : targets) table.set(m, cost);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }
  }
  if (table.size() == 0) {
    throw Error(Errc::parse_error, "cost table has no entries");
  }
  return table;
}

CostTable load_cost_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::parse_error, "cannot read cost table " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cost_table(buf.str(), path.stem().string());
}

CostEstimate estimate(const InstrSeq& seq, const CostTable& table) {
  CostEstimate est;
  std::vector<double> ready(seq.size(), 0.0);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const AbstractInstr& in = seq[i];
    if (!in.in_loop) continue;
    const InstrCost cost = table.at(in.op);
    double start = 0;
    for (std::size_t dep : in.deps) start = std::max(start, ready[dep]);
    ready[i] = start + cost.latency;
    est.latency = std::max(est.latency, ready[i]);
    est.throughput += cost.reciprocal_throughput;
    ++est.in_loop;
  }
  return est;
}

}  // namespace divconst
