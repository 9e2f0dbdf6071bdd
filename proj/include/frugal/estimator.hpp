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

// Runtime-selected estimators, shared by the experiment runner and the
// GROUPBY table.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "frugal/frugal.hpp"
#include "frugal/gk.hpp"
#include "frugal/qdigest.hpp"
#include "frugal/quantile_spec.hpp"
#include "frugal/rng.hpp"
#include "frugal/selection.hpp"

namespace frugal {

enum class EstimatorKind { kFrugal1UMedian, kFrugal1U, kFrugal2U, kGK, kQDigest, kSelection };
enum class InitMode { kZero, kFirstItem };

/// Estimator choice plus its budget. Text form, as accepted on the command
/// line: `frugal1u`, `frugal1u-median`, `frugal2u`, `gk:t=20`, `qdigest:b=20`,
/// `qdigest:b=20:max=65536`, `selection`; frugal kinds also take
/// `:init=first`.
struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::kFrugal1U;
  std::size_t gk_budget = GKSummary::kDefaultBudget;
  std::size_t qdigest_buckets = QDigest::kDefaultBuckets;
  std::int64_t qdigest_max = 0;  // 0: take the domain from the stream
  InitMode init = InitMode::kZero;

  /// Canonical text form; parse(name()) == *this.
  std::string name() const;

  /// Throws SpecError.
  static EstimatorConfig parse(std::string_view text);
  /// Comma-separated list.
  static std::vector<EstimatorConfig> parse_list(std::string_view text);

  bool is_frugal() const {
    return kind == EstimatorKind::kFrugal1UMedian || kind == EstimatorKind::kFrugal1U ||
           kind == EstimatorKind::kFrugal2U;
  }

  friend bool operator==(const EstimatorConfig&, const EstimatorConfig&) = default;
};

/// Everything an update needs besides the state itself; shared by all
/// groups of a table.
struct EstimatorContext {
  EstimatorConfig config;
  QuantileSpec q = QuantileSpec::median();
  std::int64_t domain_max = 1;  // q-digest only
};

using EstimatorState = std::variant<Frugal1UState, Frugal2UState, GKSummary, QDigest, SelectionState>;

/// Fresh state; `first_item` is used only with InitMode::kFirstItem.
EstimatorState make_state(const EstimatorContext& ctx, std::int64_t first_item);

/// Frugal-1U and Frugal-2U draw exactly one rand per item; Selection draws
/// only for reservoir-eligible items; the rest draw nothing. q-digest inputs
/// are clamped into [1, domain_max].
void update_state(EstimatorState& state, const EstimatorContext& ctx, std::int64_t item,
                  CounterRng& rng);

/// Current answer. Baselines throw std::logic_error before any item.
std::int64_t query_state(const EstimatorState& state, const EstimatorContext& ctx);

/// Words of persistent estimator state: 1 for Frugal-1U, 2 for Frugal-2U
/// (the sign bit is reported by sign_bits), tuple or node count for GK and
/// q-digest, a constant for Selection.
std::size_t memory_units(const EstimatorState& state);
std::size_t sign_bits(const EstimatorState& state);

/// A single estimator over a single stream, owning its random source.
class Estimator {
public:
  Estimator(EstimatorContext ctx, std::uint64_t seed);

  void update(std::int64_t item);
  std::int64_t estimate() const { return query_state(state_, ctx_); }
  std::size_t memory_units() const { return frugal::memory_units(state_); }
  std::uint64_t count() const { return n_; }
  const EstimatorState& state() const { return state_; }
  const EstimatorContext& context() const { return ctx_; }
  std::string name() const { return ctx_.config.name(); }

private:
  EstimatorContext ctx_;
  CounterRng rng_;
  EstimatorState state_;
  std::uint64_t n_ = 0;
};

}  // namespace frugal
