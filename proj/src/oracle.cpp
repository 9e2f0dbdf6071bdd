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

#include "frugal/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace frugal {

std::uint64_t target_rank(std::uint64_t n, const QuantileSpec& q) {
  if (n == 0) {
    throw std::logic_error("target rank of an empty stream");
  }
  const auto scaled = static_cast<unsigned __int128>(n) * static_cast<std::uint64_t>(q.h());
  return static_cast<std::uint64_t>(scaled / static_cast<std::uint64_t>(q.k())) + 1;
}

OracleState::OracleState(std::span<const std::int64_t> items)
    : pending_(items.begin(), items.end()) {}

void OracleState::insert(std::span<const std::int64_t> items) {
  pending_.insert(pending_.end(), items.begin(), items.end());
}

void OracleState::settle() const {
  if (pending_.empty()) {
    return;
  }
  std::sort(pending_.begin(), pending_.end());
  const auto mid = static_cast<std::ptrdiff_t>(sorted_.size());
  sorted_.insert(sorted_.end(), pending_.begin(), pending_.end());
  std::inplace_merge(sorted_.begin(), sorted_.begin() + mid, sorted_.end());
  pending_.clear();
}

const std::vector<std::int64_t>& OracleState::sorted() const {
  settle();
  return sorted_;
}

std::uint64_t OracleState::rank_less(std::int64_t x) const {
  settle();
  return static_cast<std::uint64_t>(std::lower_bound(sorted_.begin(), sorted_.end(), x) -
                                    sorted_.begin());
}

std::int64_t OracleState::quantile(const QuantileSpec& q) const {
  if (empty()) {
    throw std::logic_error("quantile of an empty oracle");
  }
  settle();
  return sorted_[target_rank(sorted_.size(), q) - 1];
}

double OracleState::mass_error(std::int64_t estimate, const QuantileSpec& q) const {
  if (empty()) {
    throw std::logic_error("mass error against an empty oracle");
  }
  return static_cast<double>(rank_less(estimate)) / static_cast<double>(count()) -
         q.fraction();
}

}  // namespace frugal
