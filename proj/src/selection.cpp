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

#include "frugal/selection.hpp"

#include <stdexcept>

namespace frugal {

namespace {

// Compares count/half against h/k without rounding.
bool at_or_below_target(std::uint64_t count, std::uint64_t half, const QuantileSpec& q) {
  return static_cast<unsigned __int128>(count) * static_cast<std::uint64_t>(q.k()) <=
         static_cast<unsigned __int128>(half) * static_cast<std::uint64_t>(q.h());
}

void finish_substream(SelectionState& s, const QuantileSpec& q) {
  const std::uint64_t half = s.half_length();
  const bool fresh = s.lo < s.candidate && s.candidate < s.hi;
  if (at_or_below_target(s.below + s.ties, half, q)) {
    s.lo = s.candidate;
  } else if (!at_or_below_target(s.below, half, q)) {
    s.hi = s.candidate;
  } else {
    // The candidate's rank range straddles the target. Ties go to the lower
    // bound; with no fresh candidate the interval has no interior mass left,
    // so both bounds collapse onto it.
    s.lo = s.candidate;
    if (!fresh) {
      s.hi = s.candidate;
    }
  }
  ++s.iteration;
  s.position = 0;
  s.phase = SelectionPhase::kSample;
  s.below = 0;
  s.ties = 0;
}

}  // namespace

SelectionState selection_update(SelectionState s, const QuantileSpec& q, std::int64_t item,
                                 CounterRng& rng) {
  if (s.phase == SelectionPhase::kSample) {
    if (s.lo < item && item < s.hi) {
      ++s.below;
      if (rng.next_below(s.below) == 0) {
        s.candidate = item;
      }
    }
    if (++s.position == s.half_length()) {
      s.phase = SelectionPhase::kEstimate;
      s.below = 0;
      s.ties = 0;
    }
    return s;
  }

  if (item < s.candidate) {
    ++s.below;
  } else if (item == s.candidate) {
    ++s.ties;
  }
  if (++s.position == s.substream_length()) {
    finish_substream(s, q);
  }
  return s;
}

std::int64_t selection_query(const SelectionState& s) {
  if (s.empty()) {
    throw std::logic_error("selection query before any item");
  }
  return s.candidate;
}

}  // namespace frugal
