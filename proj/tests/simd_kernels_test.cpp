// Copyright 2026 The Frugal Authors
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


#include <gtest/gtest.h>

#include <vector>

#include "frugal/frugal.hpp"
#include "frugal/kernels.hpp"
#include "frugal/rng.hpp"

using namespace frugal;

namespace {

struct LaneInput {
  std::vector<std::int64_t> items;
  std::vector<double> rands;
};

LaneInput random_input(CounterRng& rng, std::size_t lanes, std::uint64_t spread) {
  LaneInput in;
  for (std::size_t i = 0; i < lanes; ++i) {
    in.items.push_back(static_cast<std::int64_t>(rng.next_below(spread)) -
                       static_cast<std::int64_t>(spread / 2));
    // Exact gate values and the closed ends appear on purpose.
    const auto pick = rng.next_below(16);
    in.rands.push_back(pick == 0 ? 0.0 : pick == 1 ? 1.0 : pick == 2 ? 0.5 : pick == 3 ? 0.1 : pick == 4 ? 0.9 : rng.next_unit());
  }
  return in;
}

const QuantileSpec kQuantiles[] = {QuantileSpec(1, 2), QuantileSpec(9, 10), QuantileSpec(1, 10),
                                   QuantileSpec(2, 3)};

}  // namespace

TEST(SimdTest, IsaNames) {
  EXPECT_EQ(simd::isa_name(simd::Isa::kScalar), "scalar");
  EXPECT_EQ(simd::isa_name(simd::Isa::kAvx2), "avx2");
}

TEST(SimdTest, ScalarFrugal1UMatchesCoreUpdate) {
  CounterRng rng(1);
  for (const auto& q : kQuantiles) {
    std::vector<std::int64_t> est(13, 0);
    for (int step = 0; step < 500; ++step) {
      const auto in = random_input(rng, est.size(), 200);
      auto expected = est;
      for (std::size_t i = 0; i < est.size(); ++i) {
        expected[i] = frugal1u_update({expected[i]}, q, in.items[i], in.rands[i]).estimate;
      }
      simd::scalar::frugal1u_lanes(est, in.items, in.rands, q);
      ASSERT_EQ(est, expected);
    }
  }
}

TEST(SimdTest, ScalarFrugal2UMatchesCoreUpdate) {
  CounterRng rng(2);
  for (const auto& q : kQuantiles) {
    simd::Frugal2ULanes lanes(11);
    std::vector<Frugal2UState> expected(11);
    for (int step = 0; step < 500; ++step) {
      const auto in = random_input(rng, lanes.size(), step % 2 ? 50 : 100000);
      for (std::size_t i = 0; i < expected.size(); ++i) {
        expected[i] = frugal2u_update(expected[i], q, in.items[i], in.rands[i]);
      }
      simd::scalar::frugal2u_lanes(lanes, in.items, in.rands, q);
      for (std::size_t i = 0; i < expected.size(); ++i) {
        ASSERT_EQ(lanes.lane(i), expected[i]) << "lane " << i << " step " << step;
      }
    }
  }
}

TEST(SimdTest, DispatchMatchesScalar) {
  CounterRng rng(3);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 64u, 67u}) {
    std::vector<std::int64_t> a(n, 7), b(n, 7);
    simd::Frugal2ULanes la(n), lb(n);
    for (int step = 0; step < 200; ++step) {
      const auto in = random_input(rng, n, 40);
      simd::frugal1u_lanes(a, in.items, in.rands, QuantileSpec(3, 4));
      simd::scalar::frugal1u_lanes(b, in.items, in.rands, QuantileSpec(3, 4));
      simd::frugal2u_lanes(la, in.items, in.rands, QuantileSpec(3, 4));
      simd::scalar::frugal2u_lanes(lb, in.items, in.rands, QuantileSpec(3, 4));
    }
    EXPECT_EQ(a, b);
    EXPECT_EQ(la.estimate, lb.estimate);
    EXPECT_EQ(la.step, lb.step);
    EXPECT_EQ(la.sign, lb.sign);
  }
}

TEST(SimdTest, CountLessScalarIsBruteForce) {
  const std::vector<std::int64_t> v{5, -3, 5, 8, 0, 5, 9};
  EXPECT_EQ(simd::scalar::count_less(v, 5), 2u);
  EXPECT_EQ(simd::scalar::count_less(v, 100), 7u);
  EXPECT_EQ(simd::scalar::count_less(v, -100), 0u);
  EXPECT_EQ(simd::count_less({}, 1), 0u);
}

#if FRUGAL_HAVE_AVX2_KERNELS

class Avx2Test : public ::testing::Test {
protected:
  void SetUp() override {
    if (simd::detected_isa() != simd::Isa::kAvx2) {
      GTEST_SKIP() << "CPU lacks AVX2";
    }
  }
};

TEST_F(Avx2Test, Frugal1UBitIdentical) {
  CounterRng rng(4);
  for (const auto& q : kQuantiles) {
    for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 8u, 33u, 256u}) {
      std::vector<std::int64_t> a(n, 0), b(n, 0);
      for (int step = 0; step < 300; ++step) {
        const auto in = random_input(rng, n, step % 3 ? 30 : (1ull << 40));
        simd::avx2::frugal1u_lanes(a, in.items, in.rands, q);
        simd::scalar::frugal1u_lanes(b, in.items, in.rands, q);
        ASSERT_EQ(a, b) << "n=" << n << " step=" << step;
      }
    }
  }
}

TEST_F(Avx2Test, Frugal2UBitIdentical) {
  CounterRng rng(5);
  for (const auto& q : kQuantiles) {
    for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 31u, 256u}) {
      simd::Frugal2ULanes a(n), b(n);
      for (int step = 0; step < 400; ++step) {
        const auto in = random_input(rng, n, step % 4 ? 60 : (1ull << 40));
        simd::avx2::frugal2u_lanes(a, in.items, in.rands, q);
        simd::scalar::frugal2u_lanes(b, in.items, in.rands, q);
        ASSERT_EQ(a.estimate, b.estimate) << "n=" << n << " step=" << step;
        ASSERT_EQ(a.step, b.step);
        ASSERT_EQ(a.sign, b.sign);
      }
    }
  }
}

TEST_F(Avx2Test, Frugal2UFromArbitraryStates) {
  CounterRng rng(6);
  constexpr std::size_t n = 37;
  simd::Frugal2ULanes a(n);
  for (int trial = 0; trial < 2000; ++trial) {
    for (std::size_t i = 0; i < n; ++i) {
      a.set_lane(i, Frugal2UState{static_cast<std::int64_t>(rng.next_below(200)) - 100,
                                  static_cast<std::int64_t>(rng.next_below(40)) - 20,
                                  static_cast<std::int8_t>(rng.next_below(2) ? 1 : -1)});
    }
    auto b = a;
    const auto in = random_input(rng, n, 200);
    simd::avx2::frugal2u_lanes(a, in.items, in.rands, QuantileSpec(1, 2));
    simd::scalar::frugal2u_lanes(b, in.items, in.rands, QuantileSpec(1, 2));
    ASSERT_EQ(a.estimate, b.estimate);
    ASSERT_EQ(a.step, b.step);
    ASSERT_EQ(a.sign, b.sign);
  }
}

TEST_F(Avx2Test, CountLessBitIdentical) {
  CounterRng rng(7);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 15u, 16u, 17u, 1000u}) {
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < n; ++i) {
      const auto pick = rng.next_below(8);
      v.push_back(pick == 0 ? INT64_MIN : pick == 1 ? INT64_MAX : static_cast<std::int64_t>(rng.next_below(21)) - 10);
    }
    for (std::int64_t x : {INT64_MIN, std::int64_t{-11}, std::int64_t{-10}, std::int64_t{0},
                           std::int64_t{3}, std::int64_t{10}, INT64_MAX}) {
      ASSERT_EQ(simd::avx2::count_less(v, x), simd::scalar::count_less(v, x)) << n << " " << x;
    }
  }
}

#endif
