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
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "frugal/estimator.hpp"
#include "frugal/quantile_spec.hpp"
#include "frugal/stream.hpp"

namespace frugal {

/// Estimate vs the exact quantile of the prefix consumed so far.
struct ErrorRecord {
  std::uint64_t index = 0;  // position of the last consumed item
  std::int64_t estimate = 0;
  std::int64_t true_quantile = 0;
  double mass_error = 0.0;  // F(estimate) - h/k, F counting strictly smaller items
};

struct Trajectory {
  std::string run;
  std::string estimator;
  QuantileSpec quantile = QuantileSpec::median();
  std::vector<ErrorRecord> records;
};

/// Quantile of one segment on its own (the "use distribution" reference for
/// piecewise streams).
struct SegmentQuantile {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::int64_t quantile = 0;
};

struct ExperimentResult {
  std::vector<Trajectory> trajectories;
  std::vector<SegmentQuantile> use_distrib;  // one entry per segment
  /// Reference trajectory for piecewise streams: the per-segment quantile
  /// scored against the cumulative stream. Empty for single-segment streams.
  std::optional<Trajectory> use_distrib_trajectory;
};

inline constexpr std::uint64_t kDefaultStride = 100;

/// Seed of an estimator inside a run; depends on the estimator's text form
/// so it does not change with list position.
std::uint64_t estimator_seed(std::uint64_t run_seed, const EstimatorConfig& config);

/// Feeds every item to every estimator and records against the cumulative
/// oracle at every `stride`-th item and at the last item. Throws SpecError
/// when there are no estimators or stride is 0.
ExperimentResult run_on_values(std::span<const std::int64_t> values,
                               std::span<const std::uint64_t> segment_starts,
                               const std::vector<EstimatorConfig>& estimators,
                               const QuantileSpec& q, std::uint64_t stride, std::uint64_t seed,
                               const std::string& run_id);

/// Generates `spec` and runs it. The run id is the decimal seed.
ExperimentResult run_experiment(const StreamSpec& spec,
                                const std::vector<EstimatorConfig>& estimators,
                                const QuantileSpec& q, std::uint64_t stride, std::uint64_t seed);

/// F_segment(estimate) - h/k against an unsorted segment.
double segment_mass_error(std::span<const std::int64_t> segment, std::int64_t estimate,
                          const QuantileSpec& q);

// ---------------------------------------------------------------------------
// Output formats

inline constexpr const char* kTrajectoryCsvHeader =
    "run,estimator,quantile,index,estimate,true_quantile,mass_error";

/// Header plus one row per record; the use-distrib reference rows follow the
/// estimator rows under estimator name `use-distrib`.
void write_trajectories_csv(std::ostream& out, const std::vector<ExperimentResult>& results);

/// JSON array of final records, one object per (run, estimator).
void write_summary_json(std::ostream& out, const std::vector<ExperimentResult>& results);

std::string format_mass_error(double e);

// ---------------------------------------------------------------------------
// Canned experiments

/// Single Cauchy, location 10000, scale 1250, 3e4 items.
StreamSpec static_cauchy_spec(std::uint64_t seed);

/// Three 2e4-item Cauchy segments whose central 98% mass fills the windows
/// [20000,25000], [10000,15000], [15000,20000], in that order (highest,
/// lowest, middle median). The scales are stand-ins and labelled as such.
StreamSpec dynamic_cauchy_spec(std::uint64_t seed);

/// Estimators compared in the static experiment.
std::vector<EstimatorConfig> static_cauchy_estimators();
/// Estimators compared in the dynamic experiment (frugal only).
std::vector<EstimatorConfig> dynamic_cauchy_estimators();

// ---------------------------------------------------------------------------
// Per-segment adaptation

struct SegmentAdaptation {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  double start_error = 0.0;  // vs this segment, before its first item
  double end_error = 0.0;    // vs this segment, after its last item
  std::optional<std::uint64_t> entered_at;  // first index inside the band
};

/// Runs one estimator over a segmented stream and scores it against each
/// segment's own empirical distribution. `band` is the half-width of the
/// mass band around h/k.
std::vector<SegmentAdaptation> trace_adaptation(std::span<const std::int64_t> values,
                                                std::span<const std::uint64_t> segment_starts,
                                                const EstimatorConfig& config,
                                                const QuantileSpec& q, std::uint64_t seed,
                                                double band);

}  // namespace frugal
