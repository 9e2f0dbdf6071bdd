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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>

#include "frugal/quantile_spec.hpp"

namespace frugal {

/// Streaming q-digest over the integer domain [1, sigma], sigma a power of
/// two. Nodes use heap numbering: root is 1, the children of v are 2v and
/// 2v+1, and the leaf holding value x is sigma + x - 1.
///
/// Each insertion adds one to a leaf and then compresses with threshold
/// floor(n / buckets): any sibling pair whose family count (both siblings plus
/// their parent) is at most the threshold is folded into the parent.
class QDigest {
public:
  static constexpr std::size_t kDefaultBuckets = 20;

  /// `domain_max` >= 1 is rounded up to a power of two; `buckets` >= 1.
  explicit QDigest(std::int64_t domain_max, std::size_t buckets = kDefaultBuckets);

  /// Throws std::out_of_range when item is outside [1, domain_max].
  void insert(std::int64_t item);

  /// Post-order walk until the cumulative count reaches the target rank;
  /// returns the upper end of that node's range. Throws std::logic_error on
  /// an empty digest.
  std::int64_t query(const QuantileSpec& q) const;

  /// [lo, hi] value range covered by a node id.
  std::pair<std::int64_t, std::int64_t> node_range(std::uint64_t id) const;

  /// Depth-of-tree times the compression threshold; rank error bound.
  double rank_error_bound() const;

  /// floor(n / buckets).
  std::uint64_t threshold() const { return n_ / buckets_; }

  std::uint64_t count_at(std::uint64_t id) const;
  std::uint64_t leaf_id(std::int64_t value) const;

  const std::map<std::uint64_t, std::uint64_t>& nodes() const { return nodes_; }
  std::int64_t domain_max() const { return domain_max_; }
  std::uint64_t sigma() const { return sigma_; }
  unsigned depth() const { return depth_; }
  std::size_t buckets() const { return buckets_; }
  std::uint64_t count() const { return n_; }
  bool empty() const { return n_ == 0; }

  friend bool operator==(const QDigest&, const QDigest&) = default;

private:
  void compress();

  std::map<std::uint64_t, std::uint64_t> nodes_;
  std::int64_t domain_max_;
  std::uint64_t sigma_ = 1;
  unsigned depth_ = 0;
  std::size_t buckets_;
  std::uint64_t n_ = 0;
};

inline QDigest qdigest_update(QDigest d, std::int64_t item) {
  d.insert(item);
  return d;
}

inline std::int64_t qdigest_query(const QDigest& d, const QuantileSpec& q) {
  return d.query(q);
}

}  // namespace frugal
