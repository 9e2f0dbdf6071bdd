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

#include "frugal/qdigest.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "frugal/oracle.hpp"

namespace frugal {

QDigest::QDigest(std::int64_t domain_max, std::size_t buckets)
    : domain_max_(domain_max), buckets_(buckets) {
  if (domain_max < 1 || domain_max > (std::int64_t{1} << 62)) {
    throw std::invalid_argument("q-digest domain_max must lie in [1, 2^62]");
  }
  if (buckets == 0) {
    throw std::invalid_argument("q-digest needs at least one bucket");
  }
  sigma_ = std::bit_ceil(static_cast<std::uint64_t>(domain_max));
  depth_ = static_cast<unsigned>(std::countr_zero(sigma_));
}

std::uint64_t QDigest::leaf_id(std::int64_t value) const {
  return sigma_ + static_cast<std::uint64_t>(value) - 1;
}

std::uint64_t QDigest::count_at(std::uint64_t id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? 0 : it->second;
}

std::pair<std::int64_t, std::int64_t> QDigest::node_range(std::uint64_t id) const {
  const unsigned level = static_cast<unsigned>(std::bit_width(id)) - 1;  // root is level 0
  const unsigned height = depth_ - level;
  const std::uint64_t offset = id - (std::uint64_t{1} << level);
  const std::uint64_t lo = (offset << height) + 1;
  const std::uint64_t hi = lo + (std::uint64_t{1} << height) - 1;
  return {static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)};
}

double QDigest::rank_error_bound() const {
  return static_cast<double>(depth_) * static_cast<double>(n_) / static_cast<double>(buckets_);
}

void QDigest::insert(std::int64_t item) {
  if (item < 1 || item > domain_max_) {
    throw std::out_of_range("q-digest item " + std::to_string(item) + " outside [1, " +
                            std::to_string(domain_max_) + "]");
  }
  ++n_;
  ++nodes_[leaf_id(item)];
  compress();
}

// Deepest ids are largest, so a descending sweep visits every level after all
// of its descendants. Folding a pair can drop a node that was the parent of
// an already-visited pair, so sweeps repeat until nothing changes.
void QDigest::compress() {
  const std::uint64_t alpha = threshold();
  if (alpha == 0) {
    return;
  }
  bool changed = true;
  std::vector<std::uint64_t> ids;
  while (changed) {
    changed = false;
    ids.clear();
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
      ids.push_back(it->first);
    }
    for (std::uint64_t id : ids) {
      if (id == 1) {
        continue;
      }
      auto self = nodes_.find(id);
      if (self == nodes_.end()) {
        continue;  // already folded as a sibling
      }
      const std::uint64_t sibling = id ^ 1;
      const std::uint64_t parent = id >> 1;
      const std::uint64_t family = self->second + count_at(sibling) + count_at(parent);
      if (family <= alpha) {
        const std::uint64_t moved = self->second + count_at(sibling);
        nodes_.erase(self);
        nodes_.erase(sibling);
        nodes_[parent] += moved;
        changed = true;
      }
    }
  }
}

std::int64_t QDigest::query(const QuantileSpec& q) const {
  if (n_ == 0) {
    throw std::logic_error("quantile query on an empty q-digest");
  }
  // Post-order: ascending upper bound, narrower ranges first on ties.
  std::vector<std::tuple<std::int64_t, std::int64_t, std::uint64_t>> order;
  order.reserve(nodes_.size());
  for (const auto& [id, c] : nodes_) {
    auto [lo, hi] = node_range(id);
    order.emplace_back(hi, hi - lo, c);
  }
  std::sort(order.begin(), order.end());
  const std::uint64_t target = target_rank(n_, q);
  std::uint64_t acc = 0;
  for (const auto& [hi, width, c] : order) {
    acc += c;
    if (acc >= target) {
      return std::min(hi, domain_max_);
    }
  }
  return std::min(std::get<0>(order.back()), domain_max_);
}

}  // namespace frugal
