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

#include "frugal/estimator.hpp"

#include <algorithm>
#include <charconv>

#include "frugal/errors.hpp"

namespace frugal {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::int64_t parse_number(std::string_view key, std::string_view text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw SpecError("estimator parameter '" + std::string(key) + "' needs an integer, got '" +
                    std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string EstimatorConfig::name() const {
  std::string out;
  switch (kind) {
    case EstimatorKind::kFrugal1UMedian:
      out = "frugal1u-median";
      break;
    case EstimatorKind::kFrugal1U:
      out = "frugal1u";
      break;
    case EstimatorKind::kFrugal2U:
      out = "frugal2u";
      break;
    case EstimatorKind::kGK:
      return "gk:t=" + std::to_string(gk_budget);
    case EstimatorKind::kQDigest:
      out = "qdigest:b=" + std::to_string(qdigest_buckets);
      if (qdigest_max != 0) {
        out += ":max=" + std::to_string(qdigest_max);
      }
      return out;
    case EstimatorKind::kSelection:
      return "selection";
  }
  if (init == InitMode::kFirstItem) {
    out += ":init=first";
  }
  return out;
}

EstimatorConfig EstimatorConfig::parse(std::string_view text) {
  EstimatorConfig c;
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  if (head == "frugal1u") {
    c.kind = EstimatorKind::kFrugal1U;
  } else if (head == "frugal1u-median") {
    c.kind = EstimatorKind::kFrugal1UMedian;
  } else if (head == "frugal2u") {
    c.kind = EstimatorKind::kFrugal2U;
  } else if (head == "gk") {
    c.kind = EstimatorKind::kGK;
  } else if (head == "qdigest") {
    c.kind = EstimatorKind::kQDigest;
  } else if (head == "selection") {
    c.kind = EstimatorKind::kSelection;
  } else {
    throw SpecError("unknown estimator '" + std::string(head) + "'");
  }

  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  while (!rest.empty()) {
    const auto next = rest.find(':');
    const std::string_view param = rest.substr(0, next);
    rest = next == std::string_view::npos ? std::string_view{} : rest.substr(next + 1);
    const auto eq = param.find('=');
    if (eq == std::string_view::npos) {
      throw SpecError("estimator parameter '" + std::string(param) + "' must be key=value");
    }
    const std::string_view key = param.substr(0, eq);
    const std::string_view value = param.substr(eq + 1);
    if (key == "t" && c.kind == EstimatorKind::kGK) {
      const auto t = parse_number(key, value);
      if (t < 2) {
        throw SpecError("gk budget t must be at least 2");
      }
      c.gk_budget = static_cast<std::size_t>(t);
    } else if (key == "b" && c.kind == EstimatorKind::kQDigest) {
      const auto b = parse_number(key, value);
      if (b < 1) {
        throw SpecError("qdigest bucket budget b must be at least 1");
      }
      c.qdigest_buckets = static_cast<std::size_t>(b);
    } else if (key == "max" && c.kind == EstimatorKind::kQDigest) {
      const auto m = parse_number(key, value);
      if (m < 1) {
        throw SpecError("qdigest max must be at least 1");
      }
      c.qdigest_max = m;
    } else if (key == "init" && c.is_frugal()) {
      if (value == "first") {
        c.init = InitMode::kFirstItem;
      } else if (value == "zero") {
        c.init = InitMode::kZero;
      } else {
        throw SpecError("init must be 'zero' or 'first'");
      }
    } else {
      throw SpecError("estimator '" + std::string(head) + "' does not take parameter '" +
                      std::string(key) + "'");
    }
  }
  return c;
}

std::vector<EstimatorConfig> EstimatorConfig::parse_list(std::string_view text) {
  std::vector<EstimatorConfig> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view part = text.substr(0, comma);
    if (part.empty()) {
      throw SpecError("empty entry in estimator list");
    }
    out.push_back(parse(part));
    if (comma == std::string_view::npos) {
      break;
    }
    text = text.substr(comma + 1);
  }
  return out;
}

EstimatorState make_state(const EstimatorContext& ctx, std::int64_t first_item) {
  const bool seeded = ctx.config.init == InitMode::kFirstItem;
  switch (ctx.config.kind) {
    case EstimatorKind::kFrugal1UMedian:
    case EstimatorKind::kFrugal1U:
      return seeded ? seeded_frugal1u(first_item) : Frugal1UState{};
    case EstimatorKind::kFrugal2U:
      return seeded ? seeded_frugal2u(first_item) : Frugal2UState{};
    case EstimatorKind::kGK:
      return GKSummary(ctx.config.gk_budget);
    case EstimatorKind::kQDigest:
      return QDigest(std::max<std::int64_t>(ctx.domain_max, 1), ctx.config.qdigest_buckets);
    case EstimatorKind::kSelection:
      return SelectionState{};
  }
  throw SpecError("unknown estimator kind");
}

void update_state(EstimatorState& state, const EstimatorContext& ctx, std::int64_t item,
                  CounterRng& rng) {
  std::visit(
      overloaded{
          [&](Frugal1UState& s) {
            if (ctx.config.kind == EstimatorKind::kFrugal1UMedian) {
              s = frugal1u_median_update(s, item);
            } else {
              s = detail::frugal1u_step(s, item, rng.next_unit(), ctx.q.complement(),
                                        ctx.q.fraction());
            }
          },
          [&](Frugal2UState& s) {
            s = detail::frugal2u_step(s, item, rng.next_unit(), ctx.q.complement(),
                                      ctx.q.fraction());
          },
          [&](GKSummary& s) { s.insert(item); },
          [&](QDigest& s) { s.insert(std::clamp<std::int64_t>(item, 1, s.domain_max())); },
          [&](SelectionState& s) { s = selection_update(s, ctx.q, item, rng); },
      },
      state);
}

std::int64_t query_state(const EstimatorState& state, const EstimatorContext& ctx) {
  return std::visit(overloaded{
                        [](const Frugal1UState& s) { return estimate(s); },
                        [](const Frugal2UState& s) { return estimate(s); },
                        [&](const GKSummary& s) { return s.query(ctx.q); },
                        [&](const QDigest& s) { return s.query(ctx.q); },
                        [](const SelectionState& s) { return selection_query(s); },
                    },
                    state);
}

std::size_t memory_units(const EstimatorState& state) {
  return std::visit(overloaded{
                        [](const Frugal1UState&) -> std::size_t { return 1; },
                        [](const Frugal2UState&) -> std::size_t { return 2; },
                        [](const GKSummary& s) { return s.tuples().size(); },
                        [](const QDigest& s) { return s.nodes().size(); },
                        [](const SelectionState&) { return SelectionState::kMemoryUnits; },
                    },
                    state);
}

std::size_t sign_bits(const EstimatorState& state) {
  return std::holds_alternative<Frugal2UState>(state) ? 1 : 0;
}

Estimator::Estimator(EstimatorContext ctx, std::uint64_t seed)
    : ctx_(std::move(ctx)), rng_(seed), state_(make_state(ctx_, 0)) {}

void Estimator::update(std::int64_t item) {
  if (n_ == 0 && ctx_.config.init == InitMode::kFirstItem) {
    state_ = make_state(ctx_, item);
  }
  ++n_;
  update_state(state_, ctx_, item, rng_);
}

}  // namespace frugal
