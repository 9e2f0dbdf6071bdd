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

#include "frugal/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "frugal/errors.hpp"
#include "frugal/kernels.hpp"
#include "frugal/oracle.hpp"
#include "frugal/rng.hpp"
#include "json.hpp"

namespace frugal {

std::uint64_t estimator_seed(std::uint64_t run_seed, const EstimatorConfig& config) {
  return derive_seed(run_seed, hash_key(config.name()));
}

namespace {

std::vector<std::uint64_t> normalized_starts(std::span<const std::uint64_t> starts,
                                             std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : starts) {
    if (s < n && (out.empty() || s > out.back())) {
      out.push_back(s);
    }
  }
  if (out.empty() || out.front() != 0) {
    out.insert(out.begin(), 0);
  }
  return out;
}

}  // namespace

ExperimentResult run_on_values(std::span<const std::int64_t> values,
                               std::span<const std::uint64_t> segment_starts,
                               const std::vector<EstimatorConfig>& estimators,
                               const QuantileSpec& q, std::uint64_t stride, std::uint64_t seed,
                               const std::string& run_id) {
  if (estimators.empty()) {
    throw SpecError("an experiment needs at least one estimator");
  }
  if (stride == 0) {
    throw SpecError("stride must be at least 1");
  }
  if (values.empty()) {
    throw SpecError("an experiment needs a non-empty stream");
  }
  const std::uint64_t n = values.size();
  const std::int64_t stream_max = std::max<std::int64_t>(1, *std::max_element(values.begin(), values.end()));

  std::vector<Estimator> running;
  running.reserve(estimators.size());
  ExperimentResult result;
  for (const auto& config : estimators) {
    EstimatorContext ctx{config, q, config.qdigest_max != 0 ? config.qdigest_max : stream_max};
    running.emplace_back(ctx, estimator_seed(seed, config));
    result.trajectories.push_back(Trajectory{run_id, config.name(), q, {}});
  }

  const auto starts = normalized_starts(segment_starts, n);
  for (std::size_t j = 0; j < starts.size(); ++j) {
    const std::uint64_t begin = starts[j];
    const std::uint64_t end = j + 1 < starts.size() ? starts[j + 1] : n;
    OracleState segment(values.subspan(begin, end - begin));
    result.use_distrib.push_back({begin, end, segment.quantile(q)});
  }
  if (starts.size() > 1) {
    result.use_distrib_trajectory = Trajectory{run_id, "use-distrib", q, {}};
  }

  OracleState oracle;
  std::size_t segment = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::int64_t item = values[i];
    oracle.insert(item);
    for (auto& e : running) {
      e.update(item);
    }
    if ((i + 1) % stride != 0 && i + 1 != n) {
      continue;
    }
    const std::int64_t truth = oracle.quantile(q);
    for (std::size_t k = 0; k < running.size(); ++k) {
      const std::int64_t est = running[k].estimate();
      result.trajectories[k].records.push_back({i, est, truth, oracle.mass_error(est, q)});
    }
    if (result.use_distrib_trajectory) {
      while (segment + 1 < result.use_distrib.size() && i >= result.use_distrib[segment].end) {
        ++segment;
      }
      const std::int64_t ref = result.use_distrib[segment].quantile;
      result.use_distrib_trajectory->records.push_back({i, ref, truth, oracle.mass_error(ref, q)});
    }
  }
  return result;
}

ExperimentResult run_experiment(const StreamSpec& spec,
                                const std::vector<EstimatorConfig>& estimators,
                                const QuantileSpec& q, std::uint64_t stride, std::uint64_t seed) {
  const auto values = generate_values(spec);
  const auto starts = segment_starts(spec);
  return run_on_values(values, starts, estimators, q, stride, seed, std::to_string(seed));
}

double segment_mass_error(std::span<const std::int64_t> segment, std::int64_t estimate,
                          const QuantileSpec& q) {
  if (segment.empty()) {
    throw std::logic_error("mass error against an empty segment");
  }
  return static_cast<double>(simd::count_less(segment, estimate)) /
             static_cast<double>(segment.size()) -
         q.fraction();
}

// ---------------------------------------------------------------------------

std::string format_mass_error(double e) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", e);
  // Avoid "-0.000000" so equal values print identically.
  if (std::string_view(buf) == "-0.000000") {
    return "0.000000";
  }
  return buf;
}

namespace {

void write_rows(std::ostream& out, const Trajectory& t) {
  const std::string prefix = t.run + "," + t.estimator + "," + t.quantile.to_string() + ",";
  for (const auto& r : t.records) {
    out << prefix << r.index << ',' << r.estimate << ',' << r.true_quantile << ','
        << format_mass_error(r.mass_error) << '\n';
  }
}

}  // namespace

void write_trajectories_csv(std::ostream& out, const std::vector<ExperimentResult>& results) {
  out << kTrajectoryCsvHeader << '\n';
  for (const auto& result : results) {
    for (const auto& t : result.trajectories) {
      write_rows(out, t);
    }
    if (result.use_distrib_trajectory) {
      write_rows(out, *result.use_distrib_trajectory);
    }
  }
}

void write_summary_json(std::ostream& out, const std::vector<ExperimentResult>& results) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& result : results) {
    for (const auto& t : result.trajectories) {
      if (t.records.empty()) {
        continue;
      }
      const auto& r = t.records.back();
      nlohmann::ordered_json o;
      o["run"] = t.run;
      o["estimator"] = t.estimator;
      o["quantile"] = t.quantile.to_string();
      o["index"] = r.index;
      o["estimate"] = r.estimate;
      o["true_quantile"] = r.true_quantile;
      o["mass_error"] = r.mass_error;
      arr.push_back(std::move(o));
    }
  }
  out << arr.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

StreamSpec static_cauchy_spec(std::uint64_t seed) {
  return StreamSpec::cauchy(10000.0, 1250.0, 30000, seed);
}

StreamSpec dynamic_cauchy_spec(std::uint64_t seed) {
  constexpr std::uint64_t kSegment = 20000;
  constexpr double kHalfWidth = 2500.0;
  const double scale = cauchy_scale_for_window(kHalfWidth, 0.98);
  std::vector<StreamSpec> segs;
  for (double center : {22500.0, 12500.0, 17500.0}) {
    segs.push_back(StreamSpec::cauchy(center, scale, kSegment));
  }
  StreamSpec spec = StreamSpec::piecewise(std::move(segs), seed);
  spec.label = "stand-in Cauchy parameters: central 98% mass in each 5000-wide window";
  return spec;
}

std::vector<EstimatorConfig> static_cauchy_estimators() {
  return EstimatorConfig::parse_list("frugal1u,frugal2u,gk:t=20,qdigest:b=20,selection");
}

std::vector<EstimatorConfig> dynamic_cauchy_estimators() {
  return EstimatorConfig::parse_list("frugal1u,frugal2u");
}

// ---------------------------------------------------------------------------

std::vector<SegmentAdaptation> trace_adaptation(std::span<const std::int64_t> values,
                                                std::span<const std::uint64_t> segment_starts,
                                                const EstimatorConfig& config,
                                                const QuantileSpec& q, std::uint64_t seed,
                                                double band) {
  const std::uint64_t n = values.size();
  if (n == 0) {
    throw SpecError("adaptation trace needs a non-empty stream");
  }
  if (!config.is_frugal()) {
    throw SpecError("adaptation traces are defined for frugal estimators only");
  }
  const auto starts = normalized_starts(segment_starts, n);
  const std::int64_t stream_max = std::max<std::int64_t>(1, *std::max_element(values.begin(), values.end()));
  Estimator est(EstimatorContext{config, q, config.qdigest_max != 0 ? config.qdigest_max : stream_max},
                estimator_seed(seed, config));

  std::vector<SegmentAdaptation> out;
  for (std::size_t j = 0; j < starts.size(); ++j) {
    const std::uint64_t begin = starts[j];
    const std::uint64_t end = j + 1 < starts.size() ? starts[j + 1] : n;
    const auto seg = values.subspan(begin, end - begin);
    std::vector<std::int64_t> sorted(seg.begin(), seg.end());
    std::sort(sorted.begin(), sorted.end());
    const double size = static_cast<double>(sorted.size());
    auto error_of = [&](std::int64_t x) {
      const auto below = std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
      return static_cast<double>(below) / size - q.fraction();
    };

    SegmentAdaptation a;
    a.begin = begin;
    a.end = end;
    a.start_error = segment_mass_error(seg, est.estimate(), q);
    for (std::uint64_t i = begin; i < end; ++i) {
      est.update(values[i]);
      if (!a.entered_at && std::abs(error_of(est.estimate())) <= band) {
        a.entered_at = i;
      }
    }
    a.end_error = segment_mass_error(seg, est.estimate(), q);
    out.push_back(a);
  }
  return out;
}

}  // namespace frugal
