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

#include "frugal/kernels.hpp"

namespace frugal::simd::scalar {

void frugal1u_lanes(std::span<std::int64_t> estimates, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q) {
  const double up = q.complement();
  const double down = q.fraction();
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    estimates[i] = detail::frugal1u_step(Frugal1UState{estimates[i]}, items[i], rands[i], up, down)
                       .estimate;
  }
}

void frugal2u_lanes(Frugal2ULaneView lanes, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q) {
  const double up = q.complement();
  const double down = q.fraction();
  for (std::size_t i = 0; i < lanes.estimate.size(); ++i) {
    Frugal2UState s{lanes.estimate[i], lanes.step[i], static_cast<std::int8_t>(lanes.sign[i])};
    s = detail::frugal2u_step(s, items[i], rands[i], up, down);
    lanes.estimate[i] = s.estimate;
    lanes.step[i] = s.step;
    lanes.sign[i] = s.sign;
  }
}

std::uint64_t count_less(std::span<const std::int64_t> values, std::int64_t x) {
  std::uint64_t n = 0;
  for (std::int64_t v : values) {
    n += v < x ? 1 : 0;
  }
  return n;
}

}  // namespace frugal::simd::scalar
