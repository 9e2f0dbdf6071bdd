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

// Constant-memory selection for random-order streams, stream length unknown.
//
// The stream is cut into sub-streams; sub-stream i holds kBaseLength * 2^i
// items. The first half of a sub-stream samples a candidate u uniformly from
// the items strictly inside (lo, hi); the second half counts how many items
// fall below (and at) u. At the end of the sub-stream, u replaces lo or hi
// depending on where its estimated rank sits relative to q times the
// estimate-half length.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "frugal/quantile_spec.hpp"
#include "frugal/rng.hpp"

namespace frugal {

enum class SelectionPhase : std::uint8_t { kSample, kEstimate };

struct SelectionState {
  static constexpr std::uint64_t kBaseLength = 64;

  std::int64_t lo = std::numeric_limits<std::int64_t>::min();
  std::int64_t hi = std::numeric_limits<std::int64_t>::max();
  std::int64_t candidate = 0;
  // Sample half: eligible items seen (reservoir size). Estimate half: items
  // strictly below the candidate.
  std::uint64_t below = 0;
  // Estimate half only: items equal to the candidate.
  std::uint64_t ties = 0;
  SelectionPhase phase = SelectionPhase::kSample;
  std::uint32_t iteration = 0;
  std::uint64_t position = 0;  // offset inside the current sub-stream

  std::uint64_t substream_length() const { return kBaseLength << iteration; }
  std::uint64_t half_length() const { return substream_length() / 2; }
  bool empty() const { return iteration == 0 && position == 0; }

  /// Persistent words: lo, hi, candidate, below, ties, iteration/phase/position.
  static constexpr std::size_t kMemoryUnits = 6;

  friend bool operator==(const SelectionState&, const SelectionState&) = default;
};

/// `rng` drives the reservoir; it advances only for items eligible as
/// candidates.
SelectionState selection_update(SelectionState s, const QuantileSpec& q, std::int64_t item,
                                 CounterRng& rng);

/// Current candidate. Throws std::logic_error before the first item.
std::int64_t selection_query(const SelectionState& s);

}  // namespace frugal
