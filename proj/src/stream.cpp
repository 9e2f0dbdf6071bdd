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

#include "frugal/stream.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "frugal/errors.hpp"
#include "frugal/rng.hpp"
#include "json.hpp"

namespace frugal {

using nlohmann::json;

std::string_view to_string(StreamKind kind) {
  switch (kind) {
    case StreamKind::kCauchy:
      return "cauchy";
    case StreamKind::kUniform:
      return "uniform";
    case StreamKind::kAscending:
      return "ascending";
    case StreamKind::kPiecewise:
      return "piecewise";
    case StreamKind::kTrace:
      return "trace";
  }
  return "unknown";
}

std::string_view to_string(TraceColumn column) {
  return column == TraceColumn::kValue ? "value" : "timestamp";
}

std::string_view to_string(TraceTransform transform) {
  return transform == TraceTransform::kRaw ? "raw" : "intervals";
}

StreamSpec StreamSpec::cauchy(double location, double scale, std::uint64_t length,
                              std::uint64_t seed) {
  StreamSpec s;
  s.kind = StreamKind::kCauchy;
  s.location = location;
  s.scale = scale;
  s.length = length;
  s.seed = seed;
  return s;
}

StreamSpec StreamSpec::uniform(std::int64_t lo, std::int64_t hi, std::uint64_t length,
                               std::uint64_t seed) {
  StreamSpec s;
  s.kind = StreamKind::kUniform;
  s.lo = lo;
  s.hi = hi;
  s.length = length;
  s.seed = seed;
  return s;
}

StreamSpec StreamSpec::ascending(std::uint64_t length) {
  StreamSpec s;
  s.kind = StreamKind::kAscending;
  s.length = length;
  return s;
}

StreamSpec StreamSpec::piecewise(std::vector<StreamSpec> segments, std::uint64_t seed) {
  StreamSpec s;
  s.kind = StreamKind::kPiecewise;
  s.seed = seed;
  s.length = 0;
  for (const auto& seg : segments) {
    s.length += seg.length;
  }
  s.segments = std::move(segments);
  return s;
}

StreamSpec StreamSpec::trace(std::string path, TraceColumn column, TraceTransform transform) {
  StreamSpec s;
  s.kind = StreamKind::kTrace;
  s.path = std::move(path);
  s.column = column;
  s.transform = transform;
  s.length = 0;
  return s;
}

void StreamSpec::validate() const {
  switch (kind) {
    case StreamKind::kTrace:
      if (path.empty()) {
        throw SpecError("trace stream needs a path");
      }
      return;
    case StreamKind::kCauchy:
      if (!std::isfinite(location) || !std::isfinite(scale) || !(scale > 0.0)) {
        throw SpecError("cauchy stream needs a finite location and a positive scale");
      }
      break;
    case StreamKind::kUniform:
      if (lo > hi) {
        throw SpecError("uniform stream needs lo <= hi");
      }
      if (static_cast<unsigned __int128>(static_cast<__int128>(hi) - lo) >=
          (static_cast<unsigned __int128>(1) << 63)) {
        throw SpecError("uniform range too wide");
      }
      break;
    case StreamKind::kAscending:
      break;
    case StreamKind::kPiecewise: {
      if (segments.empty()) {
        throw SpecError("piecewise stream needs at least one segment");
      }
      std::uint64_t total = 0;
      for (const auto& seg : segments) {
        if (seg.kind == StreamKind::kTrace) {
          throw SpecError("piecewise segments must be synthetic");
        }
        seg.validate();
        total += seg.length;
      }
      if (total != length) {
        throw SpecError("piecewise segment lengths sum to " + std::to_string(total) +
                        ", stream length is " + std::to_string(length));
      }
      break;
    }
  }
  if (length < 1) {
    throw SpecError("stream length must be at least 1");
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json spec_to_json(const StreamSpec& s) {
  json j;
  j["kind"] = std::string(to_string(s.kind));
  if (s.kind != StreamKind::kTrace) {
    j["length"] = s.length;
  }
  if (s.kind != StreamKind::kAscending && s.kind != StreamKind::kTrace) {
    j["seed"] = s.seed;
  }
  switch (s.kind) {
    case StreamKind::kCauchy:
      j["location"] = s.location;
      j["scale"] = s.scale;
      break;
    case StreamKind::kUniform:
      j["lo"] = s.lo;
      j["hi"] = s.hi;
      break;
    case StreamKind::kPiecewise: {
      json segs = json::array();
      for (const auto& seg : s.segments) {
        segs.push_back(spec_to_json(seg));
      }
      j["segments"] = std::move(segs);
      break;
    }
    case StreamKind::kTrace:
      j["path"] = s.path;
      j["column"] = std::string(to_string(s.column));
      j["transform"] = std::string(to_string(s.transform));
      break;
    case StreamKind::kAscending:
      break;
  }
  if (!s.label.empty()) {
    j["label"] = s.label;
  }
  return j;
}

template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) {
    throw SpecError(std::string("stream spec is missing '") + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw SpecError(std::string("stream spec field '") + name + "': " + e.what());
  }
}

template <typename T>
T field_or(const json& j, const char* name, T fallback) {
  return j.contains(name) ? field<T>(j, name) : fallback;
}

StreamSpec spec_from_json(const json& j) {
  if (!j.is_object()) {
    throw SpecError("stream spec must be a JSON object");
  }
  const auto kind = field<std::string>(j, "kind");
  StreamSpec s;
  if (kind == "cauchy") {
    s = StreamSpec::cauchy(field<double>(j, "location"), field<double>(j, "scale"),
                           field<std::uint64_t>(j, "length"), field_or<std::uint64_t>(j, "seed", 0));
  } else if (kind == "uniform") {
    s = StreamSpec::uniform(field<std::int64_t>(j, "lo"), field<std::int64_t>(j, "hi"),
                            field<std::uint64_t>(j, "length"),
                            field_or<std::uint64_t>(j, "seed", 0));
  } else if (kind == "ascending") {
    s = StreamSpec::ascending(field<std::uint64_t>(j, "length"));
  } else if (kind == "piecewise") {
    const auto& segs = j.contains("segments") ? j.at("segments") : json();
    if (!segs.is_array()) {
      throw SpecError("piecewise stream needs a 'segments' array");
    }
    std::vector<StreamSpec> parts;
    for (const auto& seg : segs) {
      parts.push_back(spec_from_json(seg));
    }
    s = StreamSpec::piecewise(std::move(parts), field_or<std::uint64_t>(j, "seed", 0));
    if (j.contains("length")) {
      s.length = field<std::uint64_t>(j, "length");
    }
  } else if (kind == "trace") {
    const auto column = field_or<std::string>(j, "column", "value");
    const auto transform = field_or<std::string>(j, "transform", "raw");
    if (column != "value" && column != "timestamp") {
      throw SpecError("trace column must be 'value' or 'timestamp'");
    }
    if (transform != "raw" && transform != "intervals") {
      throw SpecError("trace transform must be 'raw' or 'intervals'");
    }
    s = StreamSpec::trace(field<std::string>(j, "path"),
                          column == "value" ? TraceColumn::kValue : TraceColumn::kTimestamp,
                          transform == "raw" ? TraceTransform::kRaw
                                             : TraceTransform::kSuccessiveIntervals);
  } else {
    throw SpecError("unknown stream kind '" + kind + "'");
  }
  s.label = field_or<std::string>(j, "label", "");
  s.validate();
  return s;
}

}  // namespace

std::string to_json(const StreamSpec& spec) { return spec_to_json(spec).dump(); }

StreamSpec stream_spec_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("stream spec is not valid JSON: ") + e.what());
  }
  return spec_from_json(j);
}

StreamSpec load_stream_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read spec file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return stream_spec_from_json(buf.str());
}

// ---------------------------------------------------------------------------
// Generation

std::int64_t cauchy_inverse_cdf(double location, double scale, double u) {
  const double x = location + scale * std::tan(std::numbers::pi * (u - 0.5));
  constexpr double kMax = 9.2233720368547748e18;  // 2^63
  if (!(x < kMax)) {
    return std::numeric_limits<std::int64_t>::max();
  }
  if (!(x > -kMax)) {
    return std::numeric_limits<std::int64_t>::min();
  }
  return std::llround(x);
}

double cauchy_scale_for_window(double half_width, double mass) {
  return half_width / std::tan(std::numbers::pi * mass / 2.0);
}

std::uint64_t segment_seed(const StreamSpec& piecewise, std::size_t index) {
  const std::string own = to_json(piecewise.segments.at(index));
  std::uint64_t occurrence = 0;
  for (std::size_t j = 0; j < index; ++j) {
    if (to_json(piecewise.segments[j]) == own) {
      ++occurrence;
    }
  }
  return derive_seed(derive_seed(piecewise.seed, hash_key(own)), occurrence);
}

std::vector<std::uint64_t> segment_starts(const StreamSpec& spec) {
  std::vector<std::uint64_t> starts{0};
  if (spec.kind == StreamKind::kPiecewise) {
    std::uint64_t at = 0;
    for (std::size_t i = 0; i + 1 < spec.segments.size(); ++i) {
      at += spec.segments[i].length;
      starts.push_back(at);
    }
  }
  return starts;
}

namespace {

void append_range(const StreamSpec& spec, std::uint64_t begin, std::uint64_t end,
                  std::vector<std::int64_t>& out) {
  switch (spec.kind) {
    case StreamKind::kCauchy:
      for (std::uint64_t i = begin; i < end; ++i) {
        out.push_back(
            cauchy_inverse_cdf(spec.location, spec.scale, to_open_unit(counter_word(spec.seed, i))));
      }
      return;
    case StreamKind::kUniform: {
      const auto span = static_cast<std::uint64_t>(spec.hi - spec.lo) + 1;
      for (std::uint64_t i = begin; i < end; ++i) {
        CounterRng rng(spec.seed, i);
        out.push_back(spec.lo + static_cast<std::int64_t>(rng.next_below(span)));
      }
      return;
    }
    case StreamKind::kAscending:
      for (std::uint64_t i = begin; i < end; ++i) {
        out.push_back(static_cast<std::int64_t>(i + 1));
      }
      return;
    case StreamKind::kPiecewise: {
      std::uint64_t seg_begin = 0;
      for (std::size_t j = 0; j < spec.segments.size() && seg_begin < end; ++j) {
        const std::uint64_t seg_end = seg_begin + spec.segments[j].length;
        if (seg_end > begin) {
          StreamSpec seg = spec.segments[j];
          seg.seed = segment_seed(spec, j);
          append_range(seg, std::max(begin, seg_begin) - seg_begin,
                       std::min(end, seg_end) - seg_begin, out);
        }
        seg_begin = seg_end;
      }
      return;
    }
    case StreamKind::kTrace:
      throw SpecError("trace streams cannot be generated by index range");
  }
}

}  // namespace

std::vector<std::int64_t> generate_range(const StreamSpec& spec, std::uint64_t begin,
                                         std::uint64_t end) {
  spec.validate();
  if (begin > end || end > spec.length) {
    throw SpecError("index range outside the stream");
  }
  std::vector<std::int64_t> out;
  out.reserve(end - begin);
  append_range(spec, begin, end, out);
  return out;
}

std::vector<std::int64_t> generate_values(const StreamSpec& spec) {
  spec.validate();
  if (spec.kind == StreamKind::kTrace) {
    auto ingested = ingest_trace(spec.path, spec.column, spec.transform);
    std::vector<std::int64_t> out;
    out.reserve(ingested.items.size());
    for (const auto& item : ingested.items) {
      out.push_back(item.value);
    }
    return out;
  }
  return generate_range(spec, 0, spec.length);
}

std::vector<StreamItem> generate(const StreamSpec& spec) {
  const auto values = generate_values(spec);
  std::vector<StreamItem> items;
  items.reserve(values.size());
  for (std::uint64_t i = 0; i < values.size(); ++i) {
    items.push_back({values[i], i});
  }
  return items;
}

void write_stream_file(const std::filesystem::path& path, const std::vector<std::int64_t>& values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  for (std::int64_t v : values) {
    out << v << '\n';
  }
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

}  // namespace frugal
