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

// Greenwald-Khanna summary with a hard tuple budget.
//
// The summary starts with a tiny epsilon. Whenever an insertion pushes the
// tuple count past the budget, compression runs; if it cannot get back under
// the budget, epsilon is raised by a fixed increment and compression reruns.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "frugal/quantile_spec.hpp"

namespace frugal {

struct GKTuple {
  std::int64_t value = 0;
  std::uint64_t g = 0;
  std::uint64_t delta = 0;

  friend bool operator==(const GKTuple&, const GKTuple&) = default;
};

class GKSummary {
public:
  static constexpr double kEpsilonIncrement = 0.001;
  static constexpr std::size_t kDefaultBudget = 20;

  /// `budget` is the maximum tuple count; must be at least 2 (min and max).
  explicit GKSummary(std::size_t budget = kDefaultBudget,
                     double initial_epsilon = kEpsilonIncrement);

  void insert(std::int64_t item);

  /// Value whose rank is within epsilon()*count() of the target rank.
  /// Throws std::logic_error on an empty summary.
  std::int64_t query(const QuantileSpec& q) const;

  /// floor(2*eps*n), never below 1; every tuple satisfies g + delta <= bound.
  std::uint64_t error_bound() const;

  /// Largest g + delta over all tuples (0 when empty).
  std::uint64_t max_band() const;

  const std::vector<GKTuple>& tuples() const { return tuples_; }
  std::uint64_t count() const { return n_; }
  double epsilon() const { return epsilon_; }
  std::size_t budget() const { return budget_; }
  bool empty() const { return n_ == 0; }

  friend bool operator==(const GKSummary&, const GKSummary&) = default;

private:
  void compress();

  std::vector<GKTuple> tuples_;
  std::uint64_t n_ = 0;
  double epsilon_;
  std::size_t budget_;
};

inline GKSummary gk_update(GKSummary s, std::int64_t item) {
  s.insert(item);
  return s;
}

inline std::int64_t gk_query(const GKSummary& s, const QuantileSpec& q) {
  return s.query(q);
}

}  // namespace frugal
