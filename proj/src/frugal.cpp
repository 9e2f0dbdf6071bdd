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

#include "frugal/frugal.hpp"

#include <stdexcept>

namespace frugal {

namespace {

void check_rand(double rand) {
  // NaN fails both comparisons.
  if (!(rand >= 0.0 && rand <= 1.0)) {
    throw std::invalid_argument("rand must lie in [0, 1]");
  }
}

}  // namespace

Frugal1UState frugal1u_update(Frugal1UState state, const QuantileSpec& q, std::int64_t item,
                              double rand) {
  check_rand(rand);
  return detail::frugal1u_step(state, item, rand, q.complement(), q.fraction());
}

Frugal2UState frugal2u_update(Frugal2UState state, const QuantileSpec& q, std::int64_t item,
                              double rand, const StepFunction& f) {
  check_rand(rand);
  return detail::frugal2u_step(state, item, rand, q.complement(), q.fraction(), f);
}

}  // namespace frugal
