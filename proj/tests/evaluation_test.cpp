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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "frugal/errors.hpp"
#include "frugal/experiment.hpp"
#include "frugal/group_table.hpp"
#include "frugal/oracle.hpp"
#include "frugal/property_suite.hpp"
#include "frugal/rng.hpp"

using namespace frugal;

namespace {

// Sort-and-index with the upper convention, written from the definition.
std::int64_t brute_quantile(std::vector<std::int64_t> items, const QuantileSpec& q) {
  std::sort(items.begin(), items.end());
  const std::uint64_t n = items.size();
  const std::uint64_t hn = q.h() * n;
  const std::uint64_t index = hn % q.k() == 0 ? hn / q.k() + 1 : (hn + q.k() - 1) / q.k();
  return items[index - 1];
}

double brute_mass_error(const std::vector<std::int64_t>& items, std::int64_t x, const QuantileSpec& q) {
  const auto less = std::count_if(items.begin(), items.end(), [&](std::int64_t v) { return v < x; });
  return static_cast<double>(less) / static_cast<double>(items.size()) - q.fraction();
}

std::vector<QuantileSpec> deciles() {
  std::vector<QuantileSpec> out;
  for (std::uint64_t h = 1; h < 10; ++h) out.emplace_back(h, 10);
  return out;
}

}  // namespace

TEST(OracleTest, UpperMedianOfEvenCount) {
  EXPECT_EQ(oracle_quantile(OracleState(std::vector<std::int64_t>{1, 2, 3, 4}), QuantileSpec::median()), 3);
}

TEST(OracleTest, MedianOfOddCount) {
  EXPECT_EQ(oracle_quantile(OracleState(std::vector<std::int64_t>{1, 2, 3, 4, 5}), QuantileSpec::median()), 3);
}

TEST(OracleTest, NinetiethPercentileOfTens) {
  OracleState o;
  for (int v = 10; v <= 100; v += 10) o.insert(v);
  EXPECT_EQ(o.quantile(QuantileSpec(9, 10)), 100);
}

TEST(OracleTest, EmptyOracleThrows) {
  OracleState o;
  EXPECT_THROW(o.quantile(QuantileSpec::median()), std::logic_error);
  EXPECT_THROW(o.mass_error(1, QuantileSpec::median()), std::logic_error);
  EXPECT_THROW(target_rank(0, QuantileSpec::median()), std::logic_error);
}

TEST(OracleTest, MatchesBruteForceOnRandomMultisets) {
  CounterRng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = 1 + rng.next_below(200);
    const auto spread = 1 + rng.next_below(trial % 2 ? 10 : 100000);
    std::vector<std::int64_t> items;
    OracleState o;
    for (std::uint64_t i = 0; i < n; ++i) {
      items.push_back(static_cast<std::int64_t>(rng.next_below(spread)) - 50);
      o.insert(items.back());
    }
    for (const auto& q : deciles()) {
      ASSERT_EQ(o.quantile(q), brute_quantile(items, q)) << "trial " << trial << " q " << q.to_string();
    }
  }
}

TEST(OracleTest, IncrementalInsertsMatchBatch) {
  CounterRng rng(8);
  OracleState o;
  std::vector<std::int64_t> items;
  for (int i = 0; i < 500; ++i) {
    items.push_back(static_cast<std::int64_t>(rng.next_below(40)));
    o.insert(items.back());
    if (i % 37 == 0) {
      ASSERT_EQ(o.quantile(QuantileSpec(3, 10)), brute_quantile(items, QuantileSpec(3, 10)));
    }
  }
  EXPECT_EQ(o.count(), 500u);
  std::sort(items.begin(), items.end());
  EXPECT_EQ(o.sorted(), items);
}

TEST(MassErrorTest, SignedDeficitAtNinety) {
  std::vector<std::int64_t> items;
  for (int v = 1; v <= 100; ++v) items.push_back(v);
  OracleState o(items);
  // 89 items below 90.
  EXPECT_NEAR(mass_error(o, 90, QuantileSpec(9, 10)), -0.01, 1e-12);
}

TEST(MassErrorTest, BelowAndAboveEverything) {
  OracleState o(std::vector<std::int64_t>{5, 6, 7, 8});
  EXPECT_EQ(o.mass_error(0, QuantileSpec::median()), -0.5);
  EXPECT_EQ(o.mass_error(100, QuantileSpec::median()), 0.5);
}

TEST(MassErrorTest, StaysWithinDefinedRange) {
  CounterRng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> items;
    for (int i = 0; i < 30; ++i) items.push_back(static_cast<std::int64_t>(rng.next_below(100)));
    OracleState o(items);
    for (const auto& q : deciles()) {
      const double e = o.mass_error(static_cast<std::int64_t>(rng.next_below(140)) - 20, q);
      ASSERT_GE(e, -q.fraction());
      ASSERT_LE(e, 1 - q.fraction());
    }
  }
}

TEST(MassErrorTest, OracleAnswerIsClosestNonOverestimate) {
  // The oracle's value is the largest stream value with F(v) <= h/k, so its
  // error is the smallest in magnitude among stream values that do not
  // overestimate. (Values above it can have a smaller positive error, e.g.
  // 7/10 of four distinct items.)
  CounterRng rng(10);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = 1 + rng.next_below(60);
    std::vector<std::int64_t> items;
    for (std::uint64_t i = 0; i < n; ++i) items.push_back(static_cast<std::int64_t>(rng.next_below(30)));
    OracleState o(items);
    for (const auto& q : deciles()) {
      const auto x = o.quantile(q);
      const double ex = o.mass_error(x, q);
      ASSERT_LE(ex, 1e-12);
      for (auto v : items) {
        const double ev = brute_mass_error(items, v, q);
        if (ev <= 1e-12) {
          ASSERT_LE(std::abs(ex), std::abs(ev) + 1e-12);
        }
      }
    }
  }
}

TEST(MassErrorTest, SegmentErrorMatchesOracle) {
  const std::vector<std::int64_t> seg{9, 1, 5, 5, 3, 7};
  OracleState o(seg);
  for (std::int64_t x = 0; x <= 10; ++x) {
    EXPECT_DOUBLE_EQ(segment_mass_error(seg, x, QuantileSpec(1, 3)), o.mass_error(x, QuantileSpec(1, 3)));
  }
}

// ---------------------------------------------------------------------------
// Experiment runner

TEST(ExperimentTest, AscendingMedianDriftsToTheEnd) {
  const auto r = run_experiment(StreamSpec::ascending(100), {EstimatorConfig::parse("frugal1u-median")},
                                QuantileSpec::median(), 10, 1);
  const auto& last = r.trajectories.at(0).records.back();
  EXPECT_EQ(last.index, 99u);
  EXPECT_EQ(last.estimate, 100);
  EXPECT_EQ(last.true_quantile, 51);
  EXPECT_DOUBLE_EQ(last.mass_error, 0.49);
}

TEST(ExperimentTest, ConstantStreamWithFirstItemInit) {
  // Every record reports the true quantile itself. Under F counting
  // strictly smaller items its error is F(c) - h/k = -h/k.
  const auto values = std::vector<std::int64_t>(1000, 42);
  const std::uint64_t start = 0;
  const auto estimators = EstimatorConfig::parse_list(
      "frugal1u:init=first,frugal1u-median:init=first,frugal2u:init=first,gk:t=20,qdigest:b=20,selection");
  for (const auto& q : {QuantileSpec(1, 2), QuantileSpec(9, 10)}) {
    const auto r = run_on_values(values, std::span(&start, 1), estimators, q, 50, 3, "c");
    for (const auto& t : r.trajectories) {
      for (const auto& rec : t.records) {
        ASSERT_EQ(rec.estimate, 42) << t.estimator;
        ASSERT_EQ(rec.true_quantile, 42);
        ASSERT_EQ(rec.mass_error, -q.fraction());
      }
    }
  }
}

TEST(ExperimentTest, RecordsAtStrideAndLastItem) {
  const auto r = run_experiment(StreamSpec::uniform(1, 9, 25, 4), {EstimatorConfig::parse("frugal2u")},
                                QuantileSpec::median(), 10, 4);
  std::vector<std::uint64_t> idx;
  for (const auto& rec : r.trajectories[0].records) idx.push_back(rec.index);
  EXPECT_EQ(idx, (std::vector<std::uint64_t>{9, 19, 24}));
}

TEST(ExperimentTest, RejectsEmptyEstimatorListAndZeroStride) {
  EXPECT_THROW(run_experiment(StreamSpec::ascending(3), {}, QuantileSpec::median(), 1, 1), SpecError);
  EXPECT_THROW(run_experiment(StreamSpec::ascending(3), EstimatorConfig::parse_list("frugal1u"),
                              QuantileSpec::median(), 0, 1),
               SpecError);
}

TEST(ExperimentTest, EstimatorSeedIgnoresListPosition) {
  const auto spec = StreamSpec::cauchy(100, 10, 2000, 5);
  const auto ab = run_experiment(spec, EstimatorConfig::parse_list("frugal1u,frugal2u"), QuantileSpec::median(), 100, 5);
  const auto ba = run_experiment(spec, EstimatorConfig::parse_list("frugal2u,frugal1u"), QuantileSpec::median(), 100, 5);
  ASSERT_EQ(ab.trajectories.size(), 2u);
  for (std::size_t i = 0; i < ab.trajectories[0].records.size(); ++i) {
    EXPECT_EQ(ab.trajectories[0].records[i].estimate, ba.trajectories[1].records[i].estimate);
    EXPECT_EQ(ab.trajectories[1].records[i].estimate, ba.trajectories[0].records[i].estimate);
  }
}

TEST(ExperimentTest, PiecewiseEmitsUseDistribSeries) {
  const auto spec = StreamSpec::piecewise({StreamSpec::uniform(1, 9, 50), StreamSpec::uniform(100, 109, 50)}, 2);
  const auto r = run_experiment(spec, EstimatorConfig::parse_list("frugal2u"), QuantileSpec::median(), 10, 2);
  ASSERT_EQ(r.use_distrib.size(), 2u);
  EXPECT_EQ(r.use_distrib[0].begin, 0u);
  EXPECT_EQ(r.use_distrib[1].begin, 50u);
  EXPECT_LE(r.use_distrib[0].quantile, 9);
  EXPECT_GE(r.use_distrib[1].quantile, 100);
  ASSERT_TRUE(r.use_distrib_trajectory.has_value());
  const auto& ud = r.use_distrib_trajectory->records;
  ASSERT_EQ(ud.size(), 10u);
  EXPECT_EQ(ud[4].estimate, r.use_distrib[0].quantile);
  EXPECT_EQ(ud[5].estimate, r.use_distrib[1].quantile);

  const auto single = run_experiment(StreamSpec::ascending(10), EstimatorConfig::parse_list("frugal2u"),
                                     QuantileSpec::median(), 5, 2);
  EXPECT_FALSE(single.use_distrib_trajectory.has_value());
}

TEST(ExperimentTest, TrajectoryIndicesStrictlyIncrease) {
  const auto r = run_experiment(StreamSpec::cauchy(0, 5, 1234, 1), EstimatorConfig::parse_list("frugal1u,gk:t=5"),
                                QuantileSpec(1, 4), 7, 1);
  for (const auto& t : r.trajectories) {
    for (std::size_t i = 1; i < t.records.size(); ++i) {
      ASSERT_LT(t.records[i - 1].index, t.records[i].index);
    }
  }
}

TEST(OutputTest, GoldenTrajectoryCsv) {
  const auto r = run_experiment(StreamSpec::ascending(4), EstimatorConfig::parse_list("frugal1u-median"),
                                QuantileSpec::median(), 2, 1);
  std::ostringstream s;
  write_trajectories_csv(s, {r});
  EXPECT_EQ(s.str(),
            "run,estimator,quantile,index,estimate,true_quantile,mass_error\n"
            "1,frugal1u-median,1/2,1,2,2,0.000000\n"
            "1,frugal1u-median,1/2,3,4,3,0.250000\n");
}

TEST(OutputTest, GoldenSummaryJson) {
  const auto r = run_experiment(StreamSpec::ascending(4), EstimatorConfig::parse_list("frugal1u-median"),
                                QuantileSpec::median(), 2, 1);
  std::ostringstream s;
  write_summary_json(s, {r});
  EXPECT_EQ(s.str(),
            "[\n"
            "  {\n"
            "    \"run\": \"1\",\n"
            "    \"estimator\": \"frugal1u-median\",\n"
            "    \"quantile\": \"1/2\",\n"
            "    \"index\": 3,\n"
            "    \"estimate\": 4,\n"
            "    \"true_quantile\": 3,\n"
            "    \"mass_error\": 0.25\n"
            "  }\n"
            "]\n");
}

TEST(OutputTest, UseDistribRowsFollowEstimatorRows) {
  const auto spec = StreamSpec::piecewise({StreamSpec::ascending(2), StreamSpec::ascending(2)}, 1);
  const auto r = run_experiment(spec, EstimatorConfig::parse_list("frugal1u-median"), QuantileSpec::median(), 2, 1);
  std::ostringstream s;
  write_trajectories_csv(s, {r});
  EXPECT_EQ(s.str(),
            "run,estimator,quantile,index,estimate,true_quantile,mass_error\n"
            "1,frugal1u-median,1/2,1,2,2,0.000000\n"
            "1,frugal1u-median,1/2,3,2,2,0.000000\n"
            "1,use-distrib,1/2,1,2,2,0.000000\n"
            "1,use-distrib,1/2,3,2,2,0.000000\n");
}

TEST(OutputTest, NegativeZeroPrintsAsZero) {
  EXPECT_EQ(format_mass_error(-0.0), "0.000000");
  EXPECT_EQ(format_mass_error(-1e-9), "0.000000");
  EXPECT_EQ(format_mass_error(-0.25), "-0.250000");
}

TEST(EstimatorConfigTest, NamesRoundTrip) {
  for (const char* text : {"frugal1u", "frugal1u:init=first", "frugal1u-median", "frugal2u",
                           "frugal2u:init=first", "gk:t=20", "gk:t=3", "qdigest:b=20",
                           "qdigest:b=4:max=1000", "selection"}) {
    const auto c = EstimatorConfig::parse(text);
    EXPECT_EQ(c.name(), text);
    EXPECT_EQ(EstimatorConfig::parse(c.name()), c);
  }
  EXPECT_EQ(EstimatorConfig::parse("gk").name(), "gk:t=20");
}

TEST(EstimatorConfigTest, RejectsBadText) {
  for (const char* text : {"", "tdigest", "gk:t=1", "gk:b=3", "qdigest:b=0", "frugal1u:init=last",
                           "selection:t=3", "gk:t", "gk:t=x"}) {
    EXPECT_THROW(EstimatorConfig::parse(text), SpecError) << text;
  }
  EXPECT_THROW(EstimatorConfig::parse_list("frugal1u,,gk"), SpecError);
}

// ---------------------------------------------------------------------------
// GROUPBY

TEST(GroupByTest, MillionKeysAccountOneUnitEach) {
  GroupTable table(EstimatorContext{EstimatorConfig::parse("frugal1u")}, 1);
  for (int i = 0; i < 1000000; ++i) {
    groupby_feed(table, std::to_string(i), i);
  }
  EXPECT_EQ(table.size(), 1000000u);
  EXPECT_EQ(table.memory_units(), 1000000u);
  EXPECT_EQ(table.sign_bits(), 0u);
}

TEST(GroupByTest, SingleKeyMatchesCoreTrace) {
  GroupTable table(EstimatorContext{EstimatorConfig::parse("frugal1u-median")}, 1);
  std::vector<std::int64_t> trace;
  for (std::int64_t v : {4, 2, 1, 5}) {
    table.feed("k", v);
    trace.push_back(table.estimate("k"));
  }
  EXPECT_EQ(trace, (std::vector<std::int64_t>{1, 2, 1, 2}));
}

TEST(GroupByTest, InterleavingMatchesIsolatedRuns) {
  for (const char* name : {"frugal1u", "frugal1u:init=first", "frugal2u", "frugal2u:init=first",
                           "gk:t=6", "qdigest:b=4", "selection"}) {
    const EstimatorContext ctx{EstimatorConfig::parse(name), QuantileSpec(2, 3), 500};
    CounterRng rng(31);
    std::vector<std::pair<std::string, std::int64_t>> stream;
    for (int i = 0; i < 20000; ++i) {
      stream.emplace_back("k" + std::to_string(rng.next_below(50)),
                          1 + static_cast<std::int64_t>(rng.next_below(500)));
    }
    GroupTable mixed(ctx, 77);
    for (const auto& [k, v] : stream) mixed.feed(k, v);

    for (const auto& key : mixed.keys_sorted()) {
      GroupTable alone(ctx, 77);
      Estimator single(ctx, mixed.group_seed(key));
      for (const auto& [k, v] : stream) {
        if (k == key) {
          alone.feed(k, v);
          single.update(v);
        }
      }
      ASSERT_EQ(mixed.find(key)->state, alone.find(key)->state) << name << " " << key;
      ASSERT_EQ(mixed.find(key)->state, single.state()) << name << " " << key;
      ASSERT_EQ(mixed.find(key)->items, single.count());
    }
  }
}

TEST(GroupByTest, MemoryAccounting) {
  CounterRng rng(3);
  for (const char* name : {"frugal1u", "frugal2u", "gk:t=5", "qdigest:b=3", "selection"}) {
    const auto config = EstimatorConfig::parse(name);
    GroupTable table(EstimatorContext{config, QuantileSpec::median(), 1 << 12}, 5);
    for (int i = 0; i < 30000; ++i) {
      table.feed(std::to_string(rng.next_below(10)), 1 + static_cast<std::int64_t>(rng.next_below(1 << 12)));
      if (i % 997 != 0) continue;
      for (const auto& key : table.keys_sorted()) {
        const auto units = memory_units(table.find(key)->state);
        switch (config.kind) {
          case EstimatorKind::kFrugal1U: ASSERT_EQ(units, 1u); break;
          case EstimatorKind::kFrugal2U: ASSERT_EQ(units, 2u); break;
          case EstimatorKind::kGK: ASSERT_LE(units, 5u); break;
          case EstimatorKind::kQDigest: ASSERT_LE(units, 9u); break;
          default: ASSERT_EQ(units, SelectionState::kMemoryUnits); break;
        }
      }
    }
    if (config.kind == EstimatorKind::kFrugal2U) {
      EXPECT_EQ(table.memory_units(), 2 * table.size());
      EXPECT_EQ(table.sign_bits(), table.size());
    }
  }
}

TEST(GroupByTest, UnknownKeyThrows) {
  GroupTable table(EstimatorContext{EstimatorConfig::parse("frugal1u")}, 1);
  EXPECT_EQ(table.find("nope"), nullptr);
  EXPECT_THROW(table.estimate("nope"), std::out_of_range);
}

// ---------------------------------------------------------------------------
// Property suite

TEST(PropertySuiteTest, DerivedDefaults) {
  PropertyTestConfig cfg;
  EXPECT_EQ(cfg.median(), 501);
  EXPECT_EQ(cfg.distance(), 501);
  EXPECT_EQ(cfg.budget(), 50100u);
  EXPECT_NEAR(cfg.stability_threshold(), 2 * std::sqrt(0.001 * std::log(1e5 / 0.05)), 1e-15);
  EXPECT_NEAR(cfg.stability_threshold(), 0.2410, 1e-4);
}

TEST(PropertySuiteTest, ValidateRejectsBadConfigs) {
  auto bad = [](auto mutate) {
    PropertyTestConfig cfg;
    mutate(cfg);
    return cfg;
  };
  EXPECT_THROW(bad([](auto& c) { c.delta = 1.0; }).validate(), SpecError);
  EXPECT_THROW(bad([](auto& c) { c.delta = -0.1; }).validate(), SpecError);
  EXPECT_THROW(bad([](auto& c) { c.epsilon = 0.0; }).validate(), SpecError);
  EXPECT_THROW(bad([](auto& c) { c.epsilon = 1.0; }).validate(), SpecError);
  EXPECT_THROW(bad([](auto& c) { c.runs = 0; }).validate(), SpecError);
  EXPECT_THROW(bad([](auto& c) { c.lo = 5; c.hi = 4; }).validate(), SpecError);
  EXPECT_NO_THROW(PropertyTestConfig{}.validate());
}

TEST(PropertySuiteTest, SmallSuitePasses) {
  PropertyTestConfig cfg;
  cfg.runs = 40;
  cfg.stability_steps = 20000;
  cfg.adaptation_runs = 5;
  const auto report = property_suite(cfg);
  ASSERT_EQ(report.results.size(), 3u);
  for (const auto& r : report.results) {
    EXPECT_TRUE(r.passed) << r.name << " " << r.detail;
  }
  std::ostringstream s;
  write_property_report_json(s, cfg, report);
  EXPECT_NE(s.str().find("\"approach_speed\""), std::string::npos);
}

TEST(PropertySuiteTest, StuckEstimatorFailsApproach) {
  // A step budget too small to cover the distance must be reported as a
  // failure, not silently passed.
  PropertyTestConfig cfg;
  cfg.runs = 20;
  cfg.step_budget = 100;
  const auto r = approach_speed(cfg);
  EXPECT_EQ(r.failures, 20u);
  EXPECT_FALSE(r.passed);
}
