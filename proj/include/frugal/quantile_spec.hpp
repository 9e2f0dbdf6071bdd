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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace frugal {

/// Target h/k-quantile, kept as an exact rational with 1 <= h <= k-1.
class QuantileSpec {
public:
  constexpr QuantileSpec(std::int64_t h, std::int64_t k) : h_(h), k_(k) {
    if (k < 2 || h < 1 || h > k - 1) {
      throw std::invalid_argument("quantile h/k requires 1 <= h <= k-1");
    }
  }

  static constexpr QuantileSpec median() { return {1, 2}; }

  /// Parses "h/k" (e.g. "9/10").
  static QuantileSpec parse(std::string_view text);

  constexpr std::int64_t h() const { return h_; }
  constexpr std::int64_t k() const { return k_; }
  constexpr double fraction() const {
    return static_cast<double>(h_) / static_cast<double>(k_);
  }

  /// 1 - h/k, rounded once from the exact rational (k-h)/k.
  constexpr double complement() const {
    return static_cast<double>(k_ - h_) / static_cast<double>(k_);
  }

  std::string to_string() const;

  friend constexpr bool operator==(const QuantileSpec&, const QuantileSpec&) = default;

private:
  std::int64_t h_;
  std::int64_t k_;
};

}  // namespace frugal
