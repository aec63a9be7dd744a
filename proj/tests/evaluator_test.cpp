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

#include "divconst/evaluator.hpp"
#include "divconst/magic.hpp"

using namespace divconst;

TEST_SUITE("evaluator") {
  TEST_CASE("oracle_div") {
    CHECK(oracle_div(0, 7) == 0);
    CHECK(oracle_div(100, 7) == 14);
    CHECK(oracle_div(4294967295u, 7) == 613566756u);
    CHECK(oracle_div(std::uint64_t{1} << 40, 3) == (std::uint64_t{1} << 40) / 3);
    CHECK_THROWS_AS(oracle_div(5, 0), Error);
  }

  TEST_CASE("GmThreeShift hand trace for d=7, x=100") {
    const Strategy gm = lower(7, Width{32}, VariantRequest::gm).front();
    CHECK(std::get<GmThreeShift>(gm).c_lo == 0x24924925u);
    // y = 14, (100 - 14) >> 1 = 43, 43 + 14 = 57, 57 >> 2 = 14.
    CHECK(((std::uint64_t{100} * 0x24924925u) >> 32) == 14);
    CHECK(eval_strategy(gm, 100, Width{32}) == 14);
  }

  TEST_CASE("WideMulHi d=7 x=100") {
    const Strategy wide = lower(7, Width{32}, VariantRequest::wide).front();
    CHECK(eval_strategy(wide, 100, Width{32}) == 14);
    CHECK(eval_strategy(wide, 4294967295u, Width{32}) == 613566756u);
  }

  TEST_CASE("CompareSelect boundary") {
    const Strategy cs = CompareSelect{0x80000001u};
    CHECK(eval_strategy(cs, 0x80000000u, Width{32}) == 0);
    CHECK(eval_strategy(cs, 0x80000001u, Width{32}) == 1);
    CHECK(eval_strategy(cs, 0xffffffffu, Width{32}) == 1);
  }

  TEST_CASE("eval_strategy rejects dividends above M") {
    CHECK_THROWS_AS(eval_strategy(Identity{}, 256, Width{8}), Error);
  }

  TEST_CASE("GM intermediate bound violation is an error, not a mismatch") {
    // c_lo >= 2^w breaks y <= x; such a strategy is a lowering bug.
    const Strategy bogus = GmThreeShift{(1u << 8) + 200, 0, 9};
    try {
      eval_strategy(bogus, 255, Width{8});
      FAIL("expected lowering-invariant");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::lowering_invariant);
    }
    CHECK_THROWS_AS(verify_strategy(7, Width{8}, bogus, ExhaustiveDomain{}), Error);
  }

  TEST_CASE("verify d=7 w=8 gm exhaustive") {
    const auto reports = verify(7, Width{8}, VariantRequest::gm, ExhaustiveDomain{});
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].variant == "gm");
    CHECK(reports[0].tested == 256);
    CHECK(reports[0].mismatches == 0);
    CHECK_FALSE(reports[0].first.has_value());
  }

  TEST_CASE("verify d=8 w=32 auto exhaustive") {
    const auto reports = verify(8, Width{32}, VariantRequest::automatic, ExhaustiveDomain{}, 4);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].tested == 4294967296u);
    CHECK(reports[0].mismatches == 0);
  }

  TEST_CASE("every 16-bit divisor and variant, exhaustively") {
    const Width w{16};
    std::uint64_t bad = 0;
    for (std::uint64_t d = 1; d <= w.max(); d += 1 + (d > 4096 ? 37 : 0)) {
      for (const VerifyReport& r : verify(d, w, VariantRequest::all, ExhaustiveDomain{})) {
        bad += r.mismatches;
      }
    }
    CHECK(bad == 0);
  }

  TEST_CASE("mismatches are counted and the smallest counterexample kept") {
    // a = 34 for d = 7 is one bit short.
    const Strategy short_shift =
        NaiveWideShift{((std::uint64_t{1} << 34) + 6) / 7, 34};
    const Domain tail = RangeDomain{4294967000u, 4294967295u};
    const VerifyReport one = verify_strategy(7, Width{32}, short_shift, tail, 1);
    const VerifyReport many = verify_strategy(7, Width{32}, short_shift, tail, 8);
    // Frozen from an independent scan of the same range.
    CHECK(one.mismatches == 42);
    REQUIRE(one.first.has_value());
    CHECK(one.first->x == 4294967004u);
    CHECK(one.first->expected == 4294967004u / 7);
    CHECK(one.mismatches == many.mismatches);
    CHECK(one.first->x == many.first->x);
    CHECK(one.tested == 296);
  }

  TEST_CASE("worker count does not change exhaustive results") {
    const Strategy off_by_one = MulShift{0xaaaaaaaau, 33};  // c one too small
    const VerifyReport a = verify_strategy(3, Width{32}, off_by_one,
                                           RangeDomain{0, (1u << 24) + 17}, 1);
    const VerifyReport b = verify_strategy(3, Width{32}, off_by_one,
                                           RangeDomain{0, (1u << 24) + 17}, 3);
    CHECK(a.mismatches > 0);
    CHECK(a.mismatches == b.mismatches);
    CHECK(a.first->x == b.first->x);
    CHECK(a.first->x == 3);  // x = 3 gives 0 instead of 1
  }

  TEST_CASE("range domain validation") {
    CHECK_THROWS_AS(verify_strategy(7, Width{8}, Identity{}, RangeDomain{5, 4}), Error);
    CHECK_THROWS_AS(verify_strategy(7, Width{8}, Identity{}, RangeDomain{0, 256}), Error);
  }

  TEST_CASE("sampled verification includes the boundary set and is deterministic") {
    const auto xs = boundary_inputs(7, Width{32});
    const std::uint64_t m = 4294967295u;
    for (std::uint64_t want : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{6},
                               std::uint64_t{7}, std::uint64_t{8}, std::uint64_t{4294967290u},
                               std::uint64_t{4294967291u}, std::uint64_t{4294967292u},
                               m - 1, m}) {
      CAPTURE(want);
      CHECK(std::find(xs.begin(), xs.end(), want) != xs.end());
    }
    // M_d = M for d = 1, so M_d + 1 is dropped.
    CHECK(boundary_inputs(1, Width{8}).back() == 255);

    const Strategy bad = MulShift{0xaaaaaaaau, 33};
    const VerifyReport r1 = verify_strategy(3, Width{32}, bad, SampleDomain{1000, 42});
    const VerifyReport r2 = verify_strategy(3, Width{32}, bad, SampleDomain{1000, 42});
    CHECK(r1.tested == 1000 + boundary_inputs(3, Width{32}).size());
    CHECK(r1.mismatches == r2.mismatches);
    CHECK(r1.first->x == r2.first->x);

    const auto good = verify(19, Width{32}, VariantRequest::all, SampleDomain{20000, 7});
    REQUIRE(good.size() == 3);
    for (const VerifyReport& r : good) CHECK(r.ok());
  }

  TEST_CASE("describe domain") {
    CHECK(describe(Domain{ExhaustiveDomain{}}) == "exhaustive");
    CHECK(describe(Domain{RangeDomain{1, 9}}) == "range:1-9");
    CHECK(describe(Domain{SampleDomain{10, 3}}) == "sample:10@3");
  }
}
