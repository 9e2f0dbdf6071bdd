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

#include "frugal/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "frugal/errors.hpp"
#include "frugal/estimator.hpp"
#include "frugal/experiment.hpp"
#include "frugal/kernels.hpp"
#include "frugal/rng.hpp"
#include "json.hpp"

namespace frugal {

void PropertyTestConfig::validate() const {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw SpecError("delta must lie in [0, 1)");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw SpecError("epsilon must lie in (0, 1)");
  }
  if (lo > hi) {
    throw SpecError("uniform range needs lo <= hi");
  }
  if (!(band > 0.0 && band < 0.5)) {
    throw SpecError("band must lie in (0, 0.5)");
  }
  if (runs == 0 || adaptation_runs == 0) {
    throw SpecError("runs must be at least 1");
  }
  if (stability_steps == 0) {
    throw SpecError("stability steps must be at least 1");
  }
  if (start_distance < 0) {
    throw SpecError("start distance must be non-negative");
  }
}

std::int64_t PropertyTestConfig::median() const {
  // F(x) = (x - lo) / N reaches 1/2 first at lo + ceil(N / 2).
  const std::int64_t n = hi - lo + 1;
  return lo + (n + 1) / 2;
}

std::int64_t PropertyTestConfig::distance() const {
  if (start_distance != 0) {
    return start_distance;
  }
  return std::abs(median() - start);
}

std::uint64_t PropertyTestConfig::budget() const {
  if (step_budget != 0) {
    return step_budget;
  }
  return static_cast<std::uint64_t>(std::ceil(5.0 * static_cast<double>(distance()) / band));
}

double PropertyTestConfig::stability_threshold() const {
  return 2.0 * std::sqrt(delta * std::log(static_cast<double>(stability_steps) / epsilon));
}

bool PropertyReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

namespace {

// Analytic CDF of the uniform test distribution, counting strictly smaller
// values.
double uniform_cdf(const PropertyTestConfig& cfg, std::int64_t x) {
  const double n = static_cast<double>(cfg.hi - cfg.lo + 1);
  const double f = static_cast<double>(x - cfg.lo) / n;
  return std::clamp(f, 0.0, 1.0);
}

// One uniform item stream and one rand stream per run, stepped in lanes.
class LaneDriver {
public:
  LaneDriver(const PropertyTestConfig& cfg, std::uint64_t salt)
      : cfg_(cfg), items_(cfg.runs), rands_(cfg.runs) {
    const std::uint64_t base = derive_seed(cfg.seed, salt);
    for (std::size_t r = 0; r < cfg.runs; ++r) {
      item_rngs_.emplace_back(derive_seed(base, 2 * r));
      rand_rngs_.emplace_back(derive_seed(base, 2 * r + 1));
    }
  }

  void step(std::span<std::int64_t> estimates) {
    const auto span = static_cast<std::uint64_t>(cfg_.hi - cfg_.lo) + 1;
    for (std::size_t r = 0; r < items_.size(); ++r) {
      items_[r] = cfg_.lo + static_cast<std::int64_t>(item_rngs_[r].next_below(span));
      rands_[r] = rand_rngs_[r].next_unit();
    }
    simd::frugal1u_lanes(estimates, items_, rands_, QuantileSpec::median());
  }

private:
  const PropertyTestConfig& cfg_;
  std::vector<std::int64_t> items_;
  std::vector<double> rands_;
  std::vector<CounterRng> item_rngs_;
  std::vector<CounterRng> rand_rngs_;
};

PropertyResult finish(std::string name, std::size_t runs, std::size_t failures, double max_rate,
                      std::string detail) {
  PropertyResult r;
  r.name = std::move(name);
  r.runs = runs;
  r.failures = failures;
  r.failure_rate = static_cast<double>(failures) / static_cast<double>(runs);
  r.max_failure_rate = max_rate;
  r.passed = r.failure_rate <= max_rate;
  r.detail = std::move(detail);
  return r;
}

}  // namespace

PropertyResult approach_speed(const PropertyTestConfig& cfg) {
  cfg.validate();
  const std::uint64_t budget = cfg.budget();
  std::vector<std::int64_t> est(cfg.runs, cfg.start);
  std::vector<bool> entered(cfg.runs, false);
  std::size_t pending = cfg.runs;
  LaneDriver driver(cfg, 1);
  auto inside = [&](std::int64_t x) { return std::abs(uniform_cdf(cfg, x) - 0.5) <= cfg.band; };
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    if (inside(est[r])) {
      entered[r] = true;
      --pending;
    }
  }
  for (std::uint64_t t = 0; t < budget && pending > 0; ++t) {
    driver.step(est);
    for (std::size_t r = 0; r < cfg.runs; ++r) {
      if (!entered[r] && inside(est[r])) {
        entered[r] = true;
        --pending;
      }
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail, "start=%lld M=%lld T=%llu band=%.3f",
                static_cast<long long>(cfg.start), static_cast<long long>(cfg.distance()),
                static_cast<unsigned long long>(budget), cfg.band);
  return finish("approach_speed", cfg.runs, pending, cfg.approach_max_failure, detail);
}

PropertyResult stability(const PropertyTestConfig& cfg) {
  cfg.validate();
  std::vector<std::int64_t> est(cfg.runs, cfg.median());
  LaneDriver driver(cfg, 2);
  for (std::uint64_t t = 0; t < cfg.stability_steps; ++t) {
    driver.step(est);
  }
  const double threshold = cfg.stability_threshold();
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::int64_t x : est) {
    const double dev = std::abs(uniform_cdf(cfg, x) - 0.5);
    worst = std::max(worst, dev);
    if (dev > threshold) {
      ++failures;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail, "t=%llu threshold=%.4f worst=%.4f",
                static_cast<unsigned long long>(cfg.stability_steps), threshold, worst);
  return finish("stability", cfg.runs, failures, cfg.stability_max_failure, detail);
}

PropertyResult adaptation(const PropertyTestConfig& cfg) {
  cfg.validate();
  const auto config = EstimatorConfig::parse("frugal2u");
  const std::uint64_t base = derive_seed(cfg.seed, 3);
  std::size_t failures = 0;
  for (std::size_t r = 0; r < cfg.adaptation_runs; ++r) {
    const std::uint64_t seed = derive_seed(base, r);
    const StreamSpec spec = dynamic_cauchy_spec(seed);
    const auto values = generate_values(spec);
    const auto starts = segment_starts(spec);
    const auto segs =
        trace_adaptation(values, starts, config, QuantileSpec::median(), seed, cfg.adaptation_band);
    const bool ok = std::all_of(segs.begin(), segs.end(),
                                [](const SegmentAdaptation& a) { return a.entered_at.has_value(); });
    if (!ok) {
      ++failures;
    }
  }
  char detail[96];
  std::snprintf(detail, sizeof detail, "estimator=frugal2u band=%.3f", cfg.adaptation_band);
  return finish("adaptation", cfg.adaptation_runs, failures, 1.0 - cfg.adaptation_min_pass, detail);
}

PropertyReport property_suite(const PropertyTestConfig& cfg) {
  cfg.validate();
  PropertyReport report;
  report.isa = std::string(simd::isa_name(simd::active_isa()));
  report.results.push_back(approach_speed(cfg));
  report.results.push_back(stability(cfg));
  report.results.push_back(adaptation(cfg));
  return report;
}

void write_property_report_json(std::ostream& out, const PropertyTestConfig& cfg,
                                const PropertyReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["isa"] = report.isa;
  j["passed"] = report.passed();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : report.results) {
    nlohmann::ordered_json o;
    o["name"] = r.name;
    o["runs"] = r.runs;
    o["failures"] = r.failures;
    o["failure_rate"] = r.failure_rate;
    o["max_failure_rate"] = r.max_failure_rate;
    o["passed"] = r.passed;
    o["detail"] = r.detail;
    arr.push_back(std::move(o));
  }
  j["results"] = std::move(arr);
  out << j.dump(2) << '\n';
}

}  // namespace frugal
