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

// AVX2 lane kernels, four 64-bit lanes per register. Only the functions in
// this file carry the avx2 target attribute so no AVX2 code can leak into
// inline functions shared with other translation units.

#include "frugal/kernels.hpp"

#if FRUGAL_HAVE_AVX2_KERNELS

#include <immintrin.h>

#define FRUGAL_AVX2 __attribute__((target("avx2")))

namespace frugal::simd::avx2 {

namespace {

constexpr std::size_t kWidth = 4;

FRUGAL_AVX2 inline __m256i load(const std::int64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

FRUGAL_AVX2 inline void store(std::int64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

FRUGAL_AVX2 inline __m256i select(__m256i mask, __m256i if_true, __m256i if_false) {
  return _mm256_blendv_epi8(if_false, if_true, mask);
}

// Lane masks for "rand > gate", widened to 64-bit integer masks.
FRUGAL_AVX2 inline __m256i rand_above(const double* rands, __m256d gate) {
  return _mm256_castpd_si256(_mm256_cmp_pd(_mm256_loadu_pd(rands), gate, _CMP_GT_OQ));
}

}  // namespace

FRUGAL_AVX2 void frugal1u_lanes(std::span<std::int64_t> estimates,
                                std::span<const std::int64_t> items,
                                std::span<const double> rands, const QuantileSpec& q) {
  const __m256d up_gate = _mm256_set1_pd(q.complement());
  const __m256d down_gate = _mm256_set1_pd(q.fraction());
  const std::size_t n = estimates.size();
  std::size_t i = 0;
  for (; i + kWidth <= n; i += kWidth) {
    __m256i est = load(estimates.data() + i);
    const __m256i item = load(items.data() + i);
    const __m256i up = _mm256_and_si256(_mm256_cmpgt_epi64(item, est),
                                        rand_above(rands.data() + i, up_gate));
    const __m256i down = _mm256_and_si256(_mm256_cmpgt_epi64(est, item),
                                          rand_above(rands.data() + i, down_gate));
    // Masks are -1 where set.
    est = _mm256_add_epi64(_mm256_sub_epi64(est, up), down);
    store(estimates.data() + i, est);
  }
  if (i < n) {
    scalar::frugal1u_lanes(estimates.subspan(i), items.subspan(i), rands.subspan(i), q);
  }
}

FRUGAL_AVX2 void frugal2u_lanes(Frugal2ULaneView lanes, std::span<const std::int64_t> items,
                                std::span<const double> rands, const QuantileSpec& q) {
  const __m256d up_gate = _mm256_set1_pd(q.complement());
  const __m256d down_gate = _mm256_set1_pd(q.fraction());
  const __m256i zero = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i minus_one = _mm256_set1_epi64x(-1);
  const std::size_t n = lanes.estimate.size();
  std::size_t i = 0;
  for (; i + kWidth <= n; i += kWidth) {
    const __m256i est = load(lanes.estimate.data() + i);
    const __m256i step = load(lanes.step.data() + i);
    const __m256i sign = load(lanes.sign.data() + i);
    const __m256i item = load(items.data() + i);
    const __m256i sign_pos = _mm256_cmpgt_epi64(sign, zero);
    const __m256i sign_neg = _mm256_cmpgt_epi64(zero, sign);

    const __m256i up = _mm256_and_si256(_mm256_cmpgt_epi64(item, est),
                                        rand_above(rands.data() + i, up_gate));
    const __m256i down = _mm256_and_si256(_mm256_cmpgt_epi64(est, item),
                                          rand_above(rands.data() + i, down_gate));

    // Larger-item branch.
    __m256i up_step = _mm256_add_epi64(step, select(sign_pos, one, minus_one));
    __m256i up_est =
        _mm256_add_epi64(est, select(_mm256_cmpgt_epi64(up_step, zero), up_step, one));
    const __m256i over = _mm256_cmpgt_epi64(up_est, item);
    up_step = select(over, _mm256_add_epi64(up_step, _mm256_sub_epi64(item, up_est)), up_step);
    up_est = select(over, item, up_est);
    up_step = select(_mm256_and_si256(sign_neg, _mm256_cmpgt_epi64(up_step, one)), one, up_step);

    // Smaller-item branch.
    __m256i down_step = _mm256_add_epi64(step, select(sign_neg, one, minus_one));
    __m256i down_est =
        _mm256_sub_epi64(est, select(_mm256_cmpgt_epi64(down_step, zero), down_step, one));
    const __m256i under = _mm256_cmpgt_epi64(item, down_est);
    down_step =
        select(under, _mm256_add_epi64(down_step, _mm256_sub_epi64(down_est, item)), down_step);
    down_est = select(under, item, down_est);
    down_step =
        select(_mm256_and_si256(sign_pos, _mm256_cmpgt_epi64(down_step, one)), one, down_step);

    store(lanes.estimate.data() + i, select(down, down_est, select(up, up_est, est)));
    store(lanes.step.data() + i, select(down, down_step, select(up, up_step, step)));
    store(lanes.sign.data() + i, select(down, minus_one, select(up, one, sign)));
  }
  if (i < n) {
    scalar::frugal2u_lanes(
        Frugal2ULaneView(lanes.estimate.subspan(i), lanes.step.subspan(i), lanes.sign.subspan(i)),
        items.subspan(i), rands.subspan(i), q);
  }
}

FRUGAL_AVX2 std::uint64_t count_less(std::span<const std::int64_t> values, std::int64_t x) {
  const __m256i bound = _mm256_set1_epi64x(x);
  __m256i acc = _mm256_setzero_si256();
  const std::size_t n = values.size();
  std::size_t i = 0;
  for (; i + kWidth <= n; i += kWidth) {
    acc = _mm256_sub_epi64(acc, _mm256_cmpgt_epi64(bound, load(values.data() + i)));
  }
  alignas(32) std::int64_t lanes[kWidth];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = static_cast<std::uint64_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
  if (i < n) {
    total += scalar::count_less(values.subspan(i), x);
  }
  return total;
}

}  // namespace frugal::simd::avx2

#endif  // FRUGAL_HAVE_AVX2_KERNELS
