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

// Replayable stream sources.
//
// Synthetic items are a pure function of (spec, seed, index): item i draws
// from counter word i of the spec's key, so a stream can be regenerated or
// sharded by index range and always comes out identical.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace frugal {

struct StreamItem {
  std::int64_t value = 0;
  std::uint64_t index = 0;

  friend bool operator==(const StreamItem&, const StreamItem&) = default;
};

enum class StreamKind { kCauchy, kUniform, kAscending, kPiecewise, kTrace };
enum class TraceColumn { kValue, kTimestamp };
enum class TraceTransform { kRaw, kSuccessiveIntervals };

std::string_view to_string(StreamKind kind);
std::string_view to_string(TraceColumn column);
std::string_view to_string(TraceTransform transform);

struct StreamSpec {
  StreamKind kind = StreamKind::kAscending;
  std::uint64_t length = 1;
  std::uint64_t seed = 0;

  // cauchy
  double location = 0.0;
  double scale = 1.0;
  // uniform, inclusive
  std::int64_t lo = 1;
  std::int64_t hi = 1;
  // piecewise; each segment's own length is its share of the stream
  std::vector<StreamSpec> segments;
  // trace
  std::string path;
  TraceColumn column = TraceColumn::kValue;
  TraceTransform transform = TraceTransform::kRaw;
  // free-form note carried into outputs (e.g. marking stand-in parameters)
  std::string label;

  static StreamSpec cauchy(double location, double scale, std::uint64_t length,
                           std::uint64_t seed = 0);
  static StreamSpec uniform(std::int64_t lo, std::int64_t hi, std::uint64_t length,
                            std::uint64_t seed = 0);
  static StreamSpec ascending(std::uint64_t length);
  static StreamSpec piecewise(std::vector<StreamSpec> segments, std::uint64_t seed = 0);
  static StreamSpec trace(std::string path, TraceColumn column = TraceColumn::kValue,
                          TraceTransform transform = TraceTransform::kRaw);

  /// Throws SpecError on invalid parameters. Trace specs are only checked
  /// for a non-empty path here; their length is known after ingestion.
  void validate() const;

  friend bool operator==(const StreamSpec&, const StreamSpec&) = default;
};

/// JSON form used by `--spec-file`. Parsing throws SpecError.
std::string to_json(const StreamSpec& spec);
StreamSpec stream_spec_from_json(std::string_view text);
StreamSpec load_stream_spec(const std::filesystem::path& path);

/// Location x0 + scale * tan(pi * (u - 1/2)), rounded to the nearest integer
/// and saturated to the int64 range.
std::int64_t cauchy_inverse_cdf(double location, double scale, double u);

/// Scale that puts the central `mass` of a Cauchy into a window of the given
/// half-width around its location.
double cauchy_scale_for_window(double half_width, double mass);

/// Seed of segment `index` of a piecewise spec. Depends on the parent seed
/// and the segment's own content, not on its position, so reordering
/// segments only moves them.
std::uint64_t segment_seed(const StreamSpec& piecewise, std::size_t index);

/// Starting index of every segment (piecewise) or {0} for other kinds.
std::vector<std::uint64_t> segment_starts(const StreamSpec& spec);

/// Full stream. Throws SpecError for invalid specs; trace specs may throw
/// IoError.
std::vector<StreamItem> generate(const StreamSpec& spec);
std::vector<std::int64_t> generate_values(const StreamSpec& spec);

/// Items [begin, end) of a synthetic stream, without generating the prefix.
std::vector<std::int64_t> generate_range(const StreamSpec& spec, std::uint64_t begin,
                                         std::uint64_t end);

// ---------------------------------------------------------------------------
// Trace files
//
// UTF-8 text, LF-terminated lines. A line is either `<int>` or
// `<key>,<int timestamp>,<int value>`. Lines starting with `#` are comments;
// empty lines are ignored. Anything else is counted as skipped.

struct TraceRecord {
  std::string key;
  std::int64_t timestamp = 0;
  std::int64_t value = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct TraceContents {
  std::vector<TraceRecord> records;
  std::uint64_t skipped = 0;
};

/// Parses one line. Returns false for lines that are not records (including
/// comments and blanks; `is_blank` tells those apart).
bool parse_trace_line(std::string_view line, TraceRecord& out, bool& is_blank);

/// Reads a whole trace. Throws IoError if unreadable. A bare `<int>` line
/// becomes a record with an empty key and that int as both timestamp and
/// value.
TraceContents read_trace(const std::filesystem::path& path);

struct IngestResult {
  std::vector<StreamItem> items;
  std::uint64_t skipped = 0;
};

/// Raw mode emits the selected column; interval mode emits differences of
/// consecutive timestamps per key, in file order. Throws IoError when the
/// file is unreadable or has no parsable records.
IngestResult ingest_trace(const std::filesystem::path& path, TraceColumn column,
                          TraceTransform transform);

/// Writes one integer per line.
void write_stream_file(const std::filesystem::path& path, const std::vector<std::int64_t>& values);

}  // namespace frugal
