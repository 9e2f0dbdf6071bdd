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

#include "frugal/gk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "frugal/oracle.hpp"

namespace frugal {

GKSummary::GKSummary(std::size_t budget, double initial_epsilon)
    : epsilon_(initial_epsilon), budget_(budget) {
  if (budget < 2) {
    throw std::invalid_argument("GK tuple budget must be at least 2");
  }
  if (!(initial_epsilon > 0.0 && initial_epsilon < 1.0)) {
    throw std::invalid_argument("GK epsilon must lie in (0, 1)");
  }
  tuples_.reserve(budget + 1);
}

std::uint64_t GKSummary::error_bound() const {
  const auto b = static_cast<std::uint64_t>(std::floor(2.0 * epsilon_ * static_cast<double>(n_)));
  return std::max<std::uint64_t>(b, 1);
}

std::uint64_t GKSummary::max_band() const {
  std::uint64_t m = 0;
  for (const auto& t : tuples_) {
    m = std::max(m, t.g + t.delta);
  }
  return m;
}

void GKSummary::insert(std::int64_t item) {
  ++n_;
  auto it = std::upper_bound(tuples_.begin(), tuples_.end(), item,
                             [](std::int64_t v, const GKTuple& t) { return v < t.value; });
  std::uint64_t delta = 0;
  if (it != tuples_.begin() && it != tuples_.end()) {
    delta = error_bound() - 1;
  }
  tuples_.insert(it, GKTuple{item, 1, delta});

  if (tuples_.size() <= budget_) {
    return;
  }
  compress();
  while (tuples_.size() > budget_) {
    epsilon_ += kEpsilonIncrement;
    compress();
  }
}

// Merge tuple i into i+1 when the merged band still fits. The first tuple is
// never merged so the minimum stays exact; the last is only ever a merge
// target so the maximum does too.
void GKSummary::compress() {
  const std::uint64_t bound = error_bound();
  if (tuples_.size() < 3) {
    return;
  }
  std::vector<GKTuple> out;
  out.reserve(tuples_.size());
  // Walk right to left, folding each tuple into its right neighbour.
  GKTuple right = tuples_.back();
  for (std::size_t i = tuples_.size() - 1; i-- > 1;) {
    const GKTuple& cur = tuples_[i];
    if (cur.g + right.g + right.delta <= bound) {
      right.g += cur.g;
    } else {
      out.push_back(right);
      right = cur;
    }
  }
  out.push_back(right);
  out.push_back(tuples_.front());
  std::reverse(out.begin(), out.end());
  tuples_ = std::move(out);
}

std::int64_t GKSummary::query(const QuantileSpec& q) const {
  if (n_ == 0) {
    throw std::logic_error("quantile query on an empty GK summary");
  }
  const auto target = static_cast<std::int64_t>(target_rank(n_, q));
  std::int64_t rmin = 0;
  std::int64_t best_err = std::numeric_limits<std::int64_t>::max();
  std::int64_t best = tuples_.front().value;
  for (const auto& t : tuples_) {
    rmin += static_cast<std::int64_t>(t.g);
    const std::int64_t rmax = rmin + static_cast<std::int64_t>(t.delta);
    const std::int64_t err = std::max(target - rmin, rmax - target);
    if (err < best_err) {
      best_err = err;
      best = t.value;
    }
  }
  return best;
}

}  // namespace frugal
