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

#include "frugal/group_table.hpp"

#include <algorithm>
#include <stdexcept>

#include "frugal/rng.hpp"

namespace frugal {

GroupTable::GroupTable(EstimatorContext ctx, std::uint64_t run_seed)
    : ctx_(std::move(ctx)), run_seed_(run_seed) {}

std::uint64_t GroupTable::group_seed(std::string_view key) const {
  return derive_seed(run_seed_, hash_key(key));
}

void GroupTable::feed(std::string_view key, std::int64_t value) {
  auto it = groups_.find(key);
  if (it == groups_.end()) {
    it = groups_.emplace(std::string(key), GroupEntry{make_state(ctx_, value), 0, 0}).first;
  }
  GroupEntry& g = it->second;
  CounterRng rng(group_seed(key), g.draws);
  update_state(g.state, ctx_, value, rng);
  g.draws = rng.counter();
  ++g.items;
}

const GroupEntry* GroupTable::find(std::string_view key) const {
  auto it = groups_.find(key);
  return it == groups_.end() ? nullptr : &it->second;
}

std::int64_t GroupTable::estimate(std::string_view key) const {
  const GroupEntry* g = find(key);
  if (g == nullptr) {
    throw std::out_of_range("unknown group '" + std::string(key) + "'");
  }
  return query_state(g->state, ctx_);
}

std::size_t GroupTable::memory_units() const {
  std::size_t total = 0;
  for (const auto& [key, g] : groups_) {
    total += frugal::memory_units(g.state);
  }
  return total;
}

std::size_t GroupTable::sign_bits() const {
  std::size_t total = 0;
  for (const auto& [key, g] : groups_) {
    total += frugal::sign_bits(g.state);
  }
  return total;
}

std::vector<std::string> GroupTable::keys_sorted() const {
  std::vector<std::string> keys;
  keys.reserve(groups_.size());
  for (const auto& [key, g] : groups_) {
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace frugal
