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

#include "frugal/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "frugal/errors.hpp"
#include "frugal/estimator.hpp"
#include "frugal/experiment.hpp"
#include "frugal/group_table.hpp"
#include "frugal/kernels.hpp"
#include "frugal/oracle.hpp"
#include "frugal/property_suite.hpp"
#include "frugal/stream.hpp"
#include "json.hpp"

#ifndef FRUGAL_VERSION
#define FRUGAL_VERSION "0.0.0"
#endif

namespace frugal::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::uint64_t seed = 1;
  std::string quantile = "1/2";
  std::string estimators;
  std::string out;
  std::string format = "csv";
  std::string spec;
  std::string spec_file;
  std::uint64_t length = 0;
  double x0 = 10000.0;
  double gamma = 1250.0;
  std::int64_t lo = 1;
  std::int64_t hi = 1000;
  std::string input;
  std::string column = "value";
  std::string transform = "raw";
  std::uint64_t stride = kDefaultStride;
  std::string experiment = "static-cauchy";
  std::size_t runs = 0;
};

std::uint64_t parse_seed_env(const char* text) {
  std::uint64_t v = 0;
  const std::string_view s(text);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw SpecError("FRUGAL_SEED must be an unsigned integer, got '" + std::string(s) + "'");
  }
  return v;
}

TraceColumn parse_column(const std::string& s) {
  if (s == "value") return TraceColumn::kValue;
  if (s == "timestamp") return TraceColumn::kTimestamp;
  throw SpecError("--column must be 'value' or 'timestamp'");
}

TraceTransform parse_transform(const std::string& s) {
  if (s == "raw") return TraceTransform::kRaw;
  if (s == "intervals") return TraceTransform::kSuccessiveIntervals;
  throw SpecError("--transform must be 'raw' or 'intervals'");
}

StreamSpec spec_from_options(const Options& o, bool length_given) {
  if (!o.spec_file.empty()) {
    StreamSpec spec = load_stream_spec(o.spec_file);
    spec.seed = o.seed;
    spec.validate();
    return spec;
  }
  StreamSpec spec;
  if (o.spec == "ascending") {
    spec = StreamSpec::ascending(length_given ? o.length : 100);
  } else if (o.spec == "uniform") {
    spec = StreamSpec::uniform(o.lo, o.hi, length_given ? o.length : 100000, o.seed);
  } else if (o.spec == "cauchy") {
    spec = StreamSpec::cauchy(o.x0, o.gamma, length_given ? o.length : 30000, o.seed);
  } else if (o.spec == "static-cauchy" || o.spec == "dynamic-cauchy") {
    if (length_given) {
      throw SpecError("--length does not apply to the canned '" + o.spec + "' stream");
    }
    spec = o.spec == "static-cauchy" ? static_cauchy_spec(o.seed) : dynamic_cauchy_spec(o.seed);
  } else if (o.spec.empty()) {
    throw SpecError("need a stream: --spec, --spec-file or --input");
  } else {
    throw SpecError("unknown --spec '" + o.spec + "'");
  }
  spec.validate();
  return spec;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  f << content;
  f.close();
  if (!f) {
    throw IoError("failed writing '" + path + "'");
  }
}

std::string default_out(const std::string& verb, const Options& o) {
  const std::string ext = o.format == "json" ? ".json" : ".csv";
  if (verb == "gen") return "stream.txt";
  if (verb == "run") return "trajectories" + ext;
  if (verb == "bench") return "bench-" + o.experiment + ext;
  if (verb == "groupby") return "groupby" + ext;
  return "proptest.json";
}

// ---------------------------------------------------------------------------

std::string do_gen(const StreamSpec& spec) {
  std::ostringstream s;
  for (std::int64_t v : generate_values(spec)) {
    s << v << '\n';
  }
  return s.str();
}

std::string render_results(const Options& o, const std::vector<ExperimentResult>& results) {
  std::ostringstream s;
  if (o.format == "json") {
    write_summary_json(s, results);
  } else {
    write_trajectories_csv(s, results);
  }
  return s.str();
}

std::string do_run(const Options& o, const StreamSpec* spec, const QuantileSpec& q) {
  const auto estimators = EstimatorConfig::parse_list(o.estimators);
  std::vector<ExperimentResult> results;
  if (spec != nullptr) {
    results.push_back(run_experiment(*spec, estimators, q, o.stride, o.seed));
  } else {
    const auto ingested = ingest_trace(o.input, parse_column(o.column), parse_transform(o.transform));
    std::vector<std::int64_t> values;
    values.reserve(ingested.items.size());
    for (const auto& item : ingested.items) {
      values.push_back(item.value);
    }
    const std::uint64_t start = 0;
    results.push_back(run_on_values(values, std::span(&start, 1), estimators, q, o.stride, o.seed,
                                    std::to_string(o.seed)));
  }
  return render_results(o, results);
}

std::string do_bench(const Options& o, const QuantileSpec& q, std::ostream& err) {
  const bool dynamic = o.experiment == "dynamic-cauchy";
  if (!dynamic && o.experiment != "static-cauchy") {
    throw SpecError("--experiment must be 'static-cauchy' or 'dynamic-cauchy'");
  }
  const auto estimators = o.estimators.empty()
                              ? (dynamic ? dynamic_cauchy_estimators() : static_cauchy_estimators())
                              : EstimatorConfig::parse_list(o.estimators);
  const std::size_t runs = o.runs == 0 ? 1 : o.runs;
  std::vector<ExperimentResult> results;
  for (std::size_t r = 0; r < runs; ++r) {
    const std::uint64_t seed = o.seed + r;
    const StreamSpec spec = dynamic ? dynamic_cauchy_spec(seed) : static_cauchy_spec(seed);
    results.push_back(run_experiment(spec, estimators, q, o.stride, seed));
  }
  if (dynamic) {
    err << "note: " << dynamic_cauchy_spec(o.seed).label << '\n';
  }
  return render_results(o, results);
}

std::string do_groupby(const Options& o, const QuantileSpec& q, std::ostream& err) {
  const auto config = EstimatorConfig::parse(o.estimators.empty() ? "frugal2u" : o.estimators);
  const TraceColumn column = parse_column(o.column);
  const auto trace = read_trace(o.input);
  if (trace.records.empty()) {
    throw IoError("no parsable records in '" + o.input + "'");
  }
  auto pick = [&](const TraceRecord& r) {
    return column == TraceColumn::kValue ? r.value : r.timestamp;
  };
  std::int64_t domain_max = 1;
  for (const auto& r : trace.records) {
    domain_max = std::max(domain_max, pick(r));
  }
  GroupTable table(EstimatorContext{config, q, config.qdigest_max != 0 ? config.qdigest_max : domain_max},
                   o.seed);
  std::map<std::string, OracleState> oracles;
  for (const auto& r : trace.records) {
    table.feed(r.key, pick(r));
    oracles[r.key].insert(pick(r));
  }

  std::ostringstream s;
  Json arr = Json::array();
  if (o.format != "json") {
    s << "key,estimator,quantile,items,estimate,memory_units,true_quantile,mass_error\n";
  }
  for (const auto& [key, oracle] : oracles) {
    const GroupEntry* g = table.find(key);
    const std::int64_t est = query_state(g->state, table.context());
    const double err_mass = oracle.mass_error(est, q);
    if (o.format == "json") {
      Json j;
      j["key"] = key;
      j["estimator"] = config.name();
      j["quantile"] = q.to_string();
      j["items"] = g->items;
      j["estimate"] = est;
      j["memory_units"] = memory_units(g->state);
      j["true_quantile"] = oracle.quantile(q);
      j["mass_error"] = err_mass;
      arr.push_back(std::move(j));
    } else {
      s << key << ',' << config.name() << ',' << q.to_string() << ',' << g->items << ',' << est
        << ',' << memory_units(g->state) << ',' << oracle.quantile(q) << ','
        << format_mass_error(err_mass) << '\n';
    }
  }
  if (o.format == "json") {
    s << arr.dump(2) << '\n';
  }
  err << "groups=" << table.size() << " memory_units=" << table.memory_units()
      << " sign_bits=" << table.sign_bits() << " skipped=" << trace.skipped << '\n';
  return s.str();
}

// ---------------------------------------------------------------------------

CLI::Option* seed_flag(CLI::App* sub, Options& o) {
  return sub->add_option("--seed", o.seed, "Run seed (FRUGAL_SEED overrides)")->capture_default_str();
}

void stream_flags(CLI::App* sub, Options& o, CLI::Option*& length) {
  auto* spec = sub->add_option("--spec", o.spec,
                               "Stream kind: ascending, uniform, cauchy, static-cauchy, dynamic-cauchy");
  auto* file = sub->add_option("--spec-file", o.spec_file, "JSON stream spec");
  spec->excludes(file);
  length = sub->add_option("--length", o.length, "Item count")->check(CLI::PositiveNumber);
  sub->add_option("--x0", o.x0, "Cauchy location")->capture_default_str();
  sub->add_option("--gamma", o.gamma, "Cauchy scale")->capture_default_str();
  sub->add_option("--lo", o.lo, "Uniform lower bound")->capture_default_str();
  sub->add_option("--hi", o.hi, "Uniform upper bound")->capture_default_str();
}

void output_flags(CLI::App* sub, Options& o, bool with_format) {
  sub->add_option("--out", o.out, "Output path, '-' for stdout");
  if (with_format) {
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }
}

Json collect_options(const CLI::App& sub, const Options& o) {
  Json j = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") {
      continue;
    }
    const std::string name = "--" + opt->get_lnames().front();
    std::string value;
    if (name == "--seed") {
      value = std::to_string(o.seed);
    } else if (name == "--out") {
      value = o.out;
    } else if (opt->count() > 0) {
      value = opt->as<std::string>();
    } else {
      value = opt->get_default_str();
    }
    if (!value.empty()) {
      j[name] = value;
    }
  }
  return j;
}

}  // namespace

std::string manifest_path(const std::string& out_path) { return out_path + ".manifest.json"; }

std::vector<std::string> replay_args(const std::string& manifest_json) {
  const Json m = Json::parse(manifest_json);
  std::vector<std::string> args{m.at("verb").get<std::string>()};
  for (const auto& [key, value] : m.at("options").items()) {
    args.push_back(key);
    args.push_back(value.get<std::string>());
  }
  return args;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Frugal streaming quantile estimators", "frugal");
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", FRUGAL_VERSION);

  CLI::Option* length = nullptr;

  auto* gen = app.add_subcommand("gen", "Write a stream file, one integer per line");
  seed_flag(gen, o);
  stream_flags(gen, o, length);
  output_flags(gen, o, false);

  auto* run_cmd = app.add_subcommand("run", "Feed a stream to estimators and write trajectories");
  seed_flag(run_cmd, o);
  CLI::Option* run_length = nullptr;
  stream_flags(run_cmd, o, run_length);
  run_cmd->add_option("--quantile", o.quantile, "Target quantile h/k")->capture_default_str();
  run_cmd->add_option("--estimator", o.estimators, "Comma-separated estimator list")
      ->default_str("frugal1u,frugal2u");
  auto* input = run_cmd->add_option("--input", o.input, "Trace file instead of a spec");
  input->excludes("--spec")->excludes("--spec-file");
  run_cmd->add_option("--column", o.column, "Trace column: value or timestamp")->capture_default_str();
  run_cmd->add_option("--transform", o.transform, "Trace transform: raw or intervals")->capture_default_str();
  run_cmd->add_option("--stride", o.stride, "Record every N items")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  output_flags(run_cmd, o, true);

  auto* bench = app.add_subcommand("bench", "Run a canned Cauchy experiment");
  seed_flag(bench, o);
  bench->add_option("--experiment", o.experiment, "static-cauchy or dynamic-cauchy")
      ->check(CLI::IsMember({"static-cauchy", "dynamic-cauchy"}))
      ->capture_default_str();
  bench->add_option("--quantile", o.quantile, "Target quantile h/k")->capture_default_str();
  bench->add_option("--estimator", o.estimators, "Override the experiment's estimator list");
  bench->add_option("--stride", o.stride, "Record every N items")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--runs", o.runs, "Seeds seed, seed+1, ...")->check(CLI::PositiveNumber);
  output_flags(bench, o, true);

  auto* groupby = app.add_subcommand("groupby", "Per-key estimates over a key,timestamp,value trace");
  seed_flag(groupby, o);
  groupby->add_option("--input", o.input, "Trace file")->required();
  groupby->add_option("--quantile", o.quantile, "Target quantile h/k")->capture_default_str();
  groupby->add_option("--estimator", o.estimators, "One estimator")->default_str("frugal2u");
  groupby->add_option("--column", o.column, "value or timestamp")->capture_default_str();
  output_flags(groupby, o, true);

  auto* proptest = app.add_subcommand("proptest", "Monte-Carlo property suite");
  seed_flag(proptest, o);
  proptest->add_option("--runs", o.runs, "Runs per uniform-distribution check")
      ->check(CLI::PositiveNumber);
  output_flags(proptest, o, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string verb = sub->get_name();

  try {
    std::string seed_source = sub->get_option("--seed")->count() > 0 ? "flag" : "default";
    if (const char* env = std::getenv("FRUGAL_SEED"); env != nullptr) {
      o.seed = parse_seed_env(env);
      seed_source = "env";
    }
    if (o.out.empty()) {
      o.out = default_out(verb, o);
    }

    Json manifest;
    manifest["tool"] = "frugal";
    manifest["version"] = FRUGAL_VERSION;
    manifest["verb"] = verb;
    manifest["argv"] = args;
    manifest["options"] = collect_options(*sub, o);
    manifest["seed"] = o.seed;
    manifest["seed_source"] = seed_source;
    manifest["isa"] = std::string(simd::isa_name(simd::active_isa()));

    std::string content;
    int status = kExitOk;
    if (verb == "gen") {
      const StreamSpec spec = spec_from_options(o, length->count() > 0);
      manifest["stream"] = Json::parse(to_json(spec));
      content = do_gen(spec);
    } else if (verb == "run") {
      const QuantileSpec q = QuantileSpec::parse(o.quantile);
      if (o.estimators.empty()) {
        o.estimators = "frugal1u,frugal2u";
      }
      if (!o.input.empty()) {
        content = do_run(o, nullptr, q);
      } else {
        const StreamSpec spec = spec_from_options(o, run_length->count() > 0);
        manifest["stream"] = Json::parse(to_json(spec));
        content = do_run(o, &spec, q);
      }
    } else if (verb == "bench") {
      const QuantileSpec q = QuantileSpec::parse(o.quantile);
      const StreamSpec first = o.experiment == "dynamic-cauchy" ? dynamic_cauchy_spec(o.seed)
                                                                : static_cauchy_spec(o.seed);
      manifest["stream"] = Json::parse(to_json(first));
      content = do_bench(o, q, err);
    } else if (verb == "groupby") {
      const QuantileSpec q = QuantileSpec::parse(o.quantile);
      content = do_groupby(o, q, err);
    } else {
      PropertyTestConfig cfg;
      cfg.seed = o.seed;
      if (o.runs != 0) {
        cfg.runs = o.runs;
      }
      const PropertyReport report = property_suite(cfg);
      std::ostringstream s;
      write_property_report_json(s, cfg, report);
      content = s.str();
      for (const auto& r : report.results) {
        err << (r.passed ? "PASS " : "FAIL ") << r.name << " failures=" << r.failures << '/'
            << r.runs << ' ' << r.detail << '\n';
      }
      status = report.passed() ? kExitOk : kExitPropertyFailed;
    }

    write_output(o.out, content, out);
    if (o.out != "-") {
      write_output(manifest_path(o.out), manifest.dump(2) + "\n", out);
    }
    return status;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace frugal::cli
