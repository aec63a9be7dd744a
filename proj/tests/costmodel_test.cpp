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

#include <doctest.h>

#include <random>

#include "divconst/costmodel.hpp"
#include "divconst/lowering.hpp"

using namespace divconst;

namespace {

CostEstimate cost_of(std::uint64_t d, VariantRequest req) {
  return estimate(to_instr_seq(lower(d, Width{32}, req).front()), CostTable::skylake_x());
}

}  // namespace

TEST_SUITE("costmodel") {
  TEST_CASE("skylake-x table values") {
    const CostTable t = CostTable::skylake_x();
    CHECK(t.name() == "skylake-x");
    CHECK(t.at(Mnemonic::add) == InstrCost{1, 0.25});
    CHECK(t.at(Mnemonic::sub) == InstrCost{1, 0.25});
    CHECK(t.at(Mnemonic::shr) == InstrCost{1, 0.5});
    CHECK(t.at(Mnemonic::mul_wide) == InstrCost{3, 1});
    CHECK(t.at(Mnemonic::mul_hi) == InstrCost{3, 1});
    CHECK(t.at(Mnemonic::shrd) == InstrCost{3, 1});
    CHECK_FALSE(t.find(Mnemonic::load_imm).has_value());
  }

  TEST_CASE("estimates for the d=7 sequences") {
    const CostEstimate wide = cost_of(7, VariantRequest::wide);
    CHECK(wide.latency == 3);
    CHECK(wide.in_loop == 1);
    CHECK(wide.throughput == 1);

    // mul 3 + take-hi 1 + sub 1 + shr 1 + add 1 + shr 1.
    const CostEstimate gm = cost_of(7, VariantRequest::gm);
    CHECK(gm.latency == 8);
    CHECK(gm.in_loop == 6);

    const CostEstimate naive = cost_of(7, VariantRequest::naive);
    CHECK(naive.latency == 6);
    CHECK(naive.latency > wide.latency);

    CHECK(estimate(InstrSeq{}, CostTable::skylake_x()).latency == 0);
  }

  TEST_CASE("the add after the halving shift waits for the longer input") {
    // y feeds both sub and add; the chain through sub/shr dominates.
    const InstrSeq seq = to_instr_seq(GmThreeShift{37, 0, 9});
    CHECK(estimate(seq, CostTable::skylake_x()).latency == 7);
  }

  TEST_CASE("parse_cost_table") {
    const CostTable shr = parse_cost_table("shr 1 0.5");
    CHECK(shr.at(Mnemonic::shr) == InstrCost{1, 0.5});
    CHECK(shr.size() == 1);

    const CostTable imul = parse_cost_table("# multiply\nimul 3 1   # both forms\n\n");
    CHECK(imul.at(Mnemonic::mul_wide) == InstrCost{3, 1});
    CHECK(imul.at(Mnemonic::mul_hi) == InstrCost{3, 1});

    CHECK_THROWS_AS(parse_cost_table(""), Error);
    CHECK_THROWS_AS(parse_cost_table("# only a comment\n"), Error);
  }

  TEST_CASE("parse errors carry the line number") {
    auto code_and_message = [](std::string_view text) {
      try {
        parse_cost_table(text);
      } catch (const Error& e) {
        return std::make_pair(e.code(), std::string(e.what()));
      }
      return std::make_pair(Errc::parse_error, std::string("no error"));
    };
    auto [c1, m1] = code_and_message("add 1 0.25\nshr 1\n");
    CHECK(c1 == Errc::parse_error);
    CHECK(m1.find("line 2") != std::string::npos);

    auto [c2, m2] = code_and_message("add 1 0.25\nimul 3 1\nmul_hi 4 1\n");
    CHECK(c2 == Errc::duplicate_entry);
    CHECK(m2.find("line 3") != std::string::npos);

    auto [c3, m3] = code_and_message("div 26 6\n");
    CHECK(c3 == Errc::unknown_mnemonic);
    CHECK(m3.find("div") != std::string::npos);

    auto [c4, m4] = code_and_message("add one 0.25\n");
    CHECK(c4 == Errc::parse_error);

    auto [c5, m5] = code_and_message("add 0 0.25\n");
    CHECK(c5 == Errc::parse_error);
  }

  TEST_CASE("missing mnemonic names the mnemonic") {
    const CostTable t = parse_cost_table("imul 3 1\n");
    try {
      estimate(to_instr_seq(lower(7, Width{32}, VariantRequest::gm).front()), t);
      FAIL("expected unknown-mnemonic");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unknown_mnemonic);
      CHECK(std::string(e.what()).find("take_hi") != std::string::npos);
    }
    // Hoisted load_imm needs no entry.
    CHECK(estimate(to_instr_seq(lower(7, Width{32}).front()), t).latency == 3);
  }

  TEST_CASE("appending an in-loop instruction never lowers the estimate") {
    constexpr Mnemonic kOps[] = {Mnemonic::mul_wide, Mnemonic::mul_hi, Mnemonic::shr,
                                 Mnemonic::shrd,     Mnemonic::sub,    Mnemonic::add,
                                 Mnemonic::take_hi,  Mnemonic::cmp_select};
    const CostTable t = CostTable::skylake_x();
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      InstrSeq seq;
      CostEstimate prev = estimate(seq, t);
      for (int i = 0; i < 12; ++i) {
        AbstractInstr in;
        in.op = kOps[rng() % std::size(kOps)];
        in.in_loop = true;
        if (!seq.empty()) {
          for (int k = 0; k < 2; ++k) {
            if (rng() % 2) in.deps.push_back(rng() % seq.size());
          }
        }
        seq.append(in);
        const CostEstimate next = estimate(seq, t);
        CHECK(next.latency >= prev.latency);
        CHECK(next.throughput >= prev.throughput);
        CHECK(next.in_loop == prev.in_loop + 1);
        prev = next;
      }
    }
  }

  TEST_CASE("wide beats gm and naive on every 33-bit divisor below 2^12") {
    for (std::uint64_t d = 3; d < 4096; ++d) {
      if (classify(d, Width{32}) != DivisorCase::mul_w_plus_1_bit) continue;
      CAPTURE(d);
      const auto wide = cost_of(d, VariantRequest::wide);
      CHECK(wide.latency == 3);
      CHECK(wide.latency < cost_of(d, VariantRequest::gm).latency);
      CHECK(wide.latency < cost_of(d, VariantRequest::naive).latency);
    }
  }
}
