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

// Lane kernels: one frugal estimator per lane, all lanes stepped together.
//
// A lane is an independent group (or an independent Monte-Carlo run). Every
// kernel has a scalar reference in `scalar::` that simply loops the core
// update; SIMD variants must agree with it bit for bit. The unqualified
// entry points dispatch once per process to the best variant the CPU
// supports. Setting FRUGAL_SIMD=scalar in the environment forces the scalar
// path.
//
// Preconditions shared by all kernels: the spans of one call have equal
// length and every rand lies in [0, 1]. Kernels do not validate rands.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "frugal/frugal.hpp"
#include "frugal/quantile_spec.hpp"

namespace frugal::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// Best ISA the running CPU supports among those compiled in.
Isa detected_isa();

/// ISA the dispatching entry points use (detected, unless overridden).
Isa active_isa();

/// Structure-of-arrays storage for Frugal-2U lanes. Signs are widened to a
/// word so a lane's three fields share one vector register layout.
struct Frugal2ULanes {
  std::vector<std::int64_t> estimate;
  std::vector<std::int64_t> step;
  std::vector<std::int64_t> sign;

  Frugal2ULanes() = default;
  explicit Frugal2ULanes(std::size_t lanes, std::int64_t initial_estimate = 0)
      : estimate(lanes, initial_estimate), step(lanes, 1), sign(lanes, 1) {}

  std::size_t size() const { return estimate.size(); }
  Frugal2UState lane(std::size_t i) const {
    return {estimate[i], step[i], static_cast<std::int8_t>(sign[i])};
  }
  void set_lane(std::size_t i, const Frugal2UState& s) {
    estimate[i] = s.estimate;
    step[i] = s.step;
    sign[i] = s.sign;
  }
};

struct Frugal2ULaneView {
  std::span<std::int64_t> estimate;
  std::span<std::int64_t> step;
  std::span<std::int64_t> sign;

  Frugal2ULaneView(Frugal2ULanes& lanes)  // NOLINT(google-explicit-constructor)
      : estimate(lanes.estimate), step(lanes.step), sign(lanes.sign) {}
  Frugal2ULaneView(std::span<std::int64_t> e, std::span<std::int64_t> st,
                   std::span<std::int64_t> sg)
      : estimate(e), step(st), sign(sg) {}
};

void frugal1u_lanes(std::span<std::int64_t> estimates, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q);

void frugal2u_lanes(Frugal2ULaneView lanes, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q);

/// Count of values strictly smaller than x.
std::uint64_t count_less(std::span<const std::int64_t> values, std::int64_t x);

namespace scalar {
void frugal1u_lanes(std::span<std::int64_t> estimates, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q);
void frugal2u_lanes(Frugal2ULaneView lanes, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q);
std::uint64_t count_less(std::span<const std::int64_t> values, std::int64_t x);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define FRUGAL_HAVE_AVX2_KERNELS 1
namespace avx2 {
// Callable only when detected_isa() == Isa::kAvx2.
void frugal1u_lanes(std::span<std::int64_t> estimates, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q);
void frugal2u_lanes(Frugal2ULaneView lanes, std::span<const std::int64_t> items,
                    std::span<const double> rands, const QuantileSpec& q);
std::uint64_t count_less(std::span<const std::int64_t> values, std::int64_t x);
}  // namespace avx2
#else
#define FRUGAL_HAVE_AVX2_KERNELS 0
#endif

}  // namespace frugal::simd
