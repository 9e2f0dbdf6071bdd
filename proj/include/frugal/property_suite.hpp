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

// Monte-Carlo checks of the convergence and stability claims for Frugal-1U
// on a uniform integer distribution, plus a drift check for Frugal-2U on a
// piecewise stream. Run counts and pass fractions are test calibration.

#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace frugal {

struct PropertyTestConfig {
  // Test distribution: uniform integers on [lo, hi].
  std::int64_t lo = 1;
  std::int64_t hi = 1000;

  double delta = 0.001;    // max single-value probability; 1/(hi-lo+1) for uniform
  double epsilon = 0.05;   // failure probability in the stability bound
  std::int64_t start = 0;  // approach run starting estimate
  // Distance from `start` to the median; 0 derives it from lo/hi.
  std::int64_t start_distance = 0;
  double band = 0.05;           // approach band half-width in CDF mass
  std::uint64_t step_budget = 0;  // 0 derives 5 * M / band
  std::uint64_t stability_steps = 100000;
  std::size_t runs = 200;

  double approach_max_failure = 0.05;
  double stability_max_failure = 0.10;

  std::size_t adaptation_runs = 50;
  double adaptation_band = 0.1;
  double adaptation_min_pass = 0.70;

  std::uint64_t seed = 1;

  /// Throws SpecError when a field is out of range.
  void validate() const;

  /// Smallest x with F(x) >= 1/2 under F(x) = P(X < x).
  std::int64_t median() const;
  std::int64_t distance() const;
  std::uint64_t budget() const;
  /// 2 * sqrt(delta * ln(t / epsilon)).
  double stability_threshold() const;
};

struct PropertyResult {
  std::string name;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double failure_rate = 0.0;
  double max_failure_rate = 0.0;
  bool passed = false;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyResult> results;
  std::string isa;

  bool passed() const;
};

/// Fraction of runs starting at `start` whose F(estimate) never enters
/// [1/2 - band, 1/2 + band] within the step budget.
PropertyResult approach_speed(const PropertyTestConfig& cfg);

/// Fraction of runs started at the median whose final |F(estimate) - 1/2|
/// exceeds the stability threshold.
PropertyResult stability(const PropertyTestConfig& cfg);

/// Fraction of Frugal-2U runs on the dynamic Cauchy stream that fail to
/// enter every segment's own mass band before the segment ends.
PropertyResult adaptation(const PropertyTestConfig& cfg);

PropertyReport property_suite(const PropertyTestConfig& cfg);

void write_property_report_json(std::ostream& out, const PropertyTestConfig& cfg,
                                const PropertyReport& report);

}  // namespace frugal
