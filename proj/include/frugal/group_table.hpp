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

// GROUPBY aggregation: one independent estimator per key over a single
// interleaved stream.
//
// Each group draws from its own counter-based random stream keyed by
// (run seed, key), so a group's final state does not depend on how its
// items were interleaved with other groups. The draw counter lives beside
// the estimator state; it is replay bookkeeping and is not counted as
// estimator memory.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "frugal/estimator.hpp"

namespace frugal {

struct GroupEntry {
  EstimatorState state;
  std::uint64_t items = 0;
  std::uint64_t draws = 0;
};

class GroupTable {
public:
  GroupTable(EstimatorContext ctx, std::uint64_t run_seed);

  /// Creates the group on first sight, then updates it.
  void feed(std::string_view key, std::int64_t value);

  std::size_t size() const { return groups_.size(); }
  const GroupEntry* find(std::string_view key) const;

  /// Throws std::out_of_range for an unknown key.
  std::int64_t estimate(std::string_view key) const;

  /// Sum of per-group estimator words.
  std::size_t memory_units() const;
  std::size_t sign_bits() const;

  std::uint64_t group_seed(std::string_view key) const;
  std::vector<std::string> keys_sorted() const;

  const EstimatorContext& context() const { return ctx_; }
  std::uint64_t run_seed() const { return run_seed_; }

private:
  struct KeyHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  EstimatorContext ctx_;
  std::uint64_t run_seed_;
  std::unordered_map<std::string, GroupEntry, KeyHash, std::equal_to<>> groups_;
};

inline void groupby_feed(GroupTable& table, std::string_view key, std::int64_t value) {
  table.feed(key, value);
}

}  // namespace frugal
