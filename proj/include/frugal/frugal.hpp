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

// Frugal quantile estimators: one or two words of state per stream.
//
// All updates are pure functions of (state, item, rand). The caller owns the
// random source so a group's trajectory can be replayed exactly.

#pragma once

#include <cstdint>

#include "frugal/quantile_spec.hpp"

namespace frugal {

/// One-word estimator state.
struct Frugal1UState {
  std::int64_t estimate = 0;

  friend constexpr bool operator==(const Frugal1UState&, const Frugal1UState&) = default;
};

/// Estimate plus step size and a direction bit.
struct Frugal2UState {
  std::int64_t estimate = 0;
  std::int64_t step = 1;
  std::int8_t sign = 1;

  friend constexpr bool operator==(const Frugal2UState&, const Frugal2UState&) = default;
};

/// Step increment schedule for Frugal-2U. Only the constant additive
/// schedule f(step) = 1 is defined.
class StepFunction {
public:
  enum class Kind { kConstantAdditive };

  constexpr StepFunction() = default;

  constexpr Kind kind() const { return kind_; }
  constexpr std::int64_t operator()(std::int64_t /*step*/) const { return 1; }

private:
  Kind kind_ = Kind::kConstantAdditive;
};

inline constexpr Frugal1UState seeded_frugal1u(std::int64_t first_item) {
  return Frugal1UState{first_item};
}

inline constexpr Frugal2UState seeded_frugal2u(std::int64_t first_item) {
  return Frugal2UState{first_item, 1, 1};
}

/// Deterministic median drift: +1 on a larger item, -1 on a smaller one.
constexpr Frugal1UState frugal1u_median_update(Frugal1UState state, std::int64_t item) {
  if (item > state.estimate) {
    ++state.estimate;
  } else if (item < state.estimate) {
    --state.estimate;
  }
  return state;
}

/// h/k-quantile drift. `rand` must lie in [0, 1]; throws std::invalid_argument
/// otherwise.
Frugal1UState frugal1u_update(Frugal1UState state, const QuantileSpec& q,
                              std::int64_t item, double rand);

/// Adaptive-step estimator. `rand` must lie in [0, 1].
Frugal2UState frugal2u_update(Frugal2UState state, const QuantileSpec& q,
                              std::int64_t item, double rand,
                              const StepFunction& f = StepFunction{});

constexpr std::int64_t estimate(const Frugal1UState& s) { return s.estimate; }
constexpr std::int64_t estimate(const Frugal2UState& s) { return s.estimate; }

namespace detail {

// Unchecked kernels shared by the checked entry points and the lane kernels.
// `up_gate` is 1 - h/k and `down_gate` is h/k.
constexpr Frugal1UState frugal1u_step(Frugal1UState s, std::int64_t item, double rand,
                                      double up_gate, double down_gate) {
  if (item > s.estimate && rand > up_gate) {
    ++s.estimate;
  } else if (item < s.estimate && rand > down_gate) {
    --s.estimate;
  }
  return s;
}

constexpr Frugal2UState frugal2u_step(Frugal2UState s, std::int64_t item, double rand,
                                      double up_gate, double down_gate,
                                      const StepFunction& f = StepFunction{}) {
  if (item > s.estimate && rand > up_gate) {
    s.step += s.sign > 0 ? f(s.step) : -f(s.step);
    s.estimate += s.step > 0 ? s.step : 1;
    if (s.estimate > item) {
      s.step += item - s.estimate;
      s.estimate = item;
    }
    if (s.sign < 0 && s.step > 1) {
      s.step = 1;
    }
    s.sign = 1;
  } else if (item < s.estimate && rand > down_gate) {
    s.step += s.sign < 0 ? f(s.step) : -f(s.step);
    s.estimate -= s.step > 0 ? s.step : 1;
    if (s.estimate < item) {
      s.step += s.estimate - item;
      s.estimate = item;
    }
    if (s.sign > 0 && s.step > 1) {
      s.step = 1;
    }
    s.sign = -1;
  }
  return s;
}

}  // namespace detail

}  // namespace frugal
