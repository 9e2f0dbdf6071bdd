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

// Exact rank oracle for evaluation. Stores every item, so it is meant for
// desk-scale streams only and never sits inside an estimator.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "frugal/quantile_spec.hpp"

namespace frugal {

/// 1-based index of the h/k-quantile among n sorted items: floor(h*n/k) + 1.
/// For integral h*n/k that is the upper quantile (upper median for even n);
/// otherwise it equals ceil(h*n/k). Requires n >= 1.
std::uint64_t target_rank(std::uint64_t n, const QuantileSpec& q);

class OracleState {
public:
  OracleState() = default;
  explicit OracleState(std::span<const std::int64_t> items);

  void insert(std::int64_t item) { pending_.push_back(item); }
  void insert(std::span<const std::int64_t> items);

  std::uint64_t count() const { return sorted_.size() + pending_.size(); }
  bool empty() const { return count() == 0; }

  /// Number of items strictly smaller than x.
  std::uint64_t rank_less(std::int64_t x) const;

  /// Sorted item at the 1-based index target_rank(n, q). Throws
  /// std::logic_error when empty.
  std::int64_t quantile(const QuantileSpec& q) const;

  /// F(x) - h/k with F(x) = rank_less(x) / n. Throws std::logic_error when
  /// empty.
  double mass_error(std::int64_t estimate, const QuantileSpec& q) const;

  const std::vector<std::int64_t>& sorted() const;

private:
  void settle() const;

  // Inserts are buffered and merged in on the next query.
  mutable std::vector<std::int64_t> sorted_;
  mutable std::vector<std::int64_t> pending_;
};

inline std::int64_t oracle_quantile(const OracleState& o, const QuantileSpec& q) {
  return o.quantile(q);
}

inline double mass_error(const OracleState& o, std::int64_t estimate, const QuantileSpec& q) {
  return o.mass_error(estimate, q);
}

}  // namespace frugal
