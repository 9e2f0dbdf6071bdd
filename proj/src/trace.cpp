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

#include <charconv>
#include <fstream>
#include <string>
#include <unordered_map>

#include "frugal/errors.hpp"
#include "frugal/stream.hpp"

namespace frugal {

namespace {

bool parse_int(std::string_view text, std::int64_t& out) {
  if (text.empty()) {
    return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

bool parse_trace_line(std::string_view line, TraceRecord& out, bool& is_blank) {
  if (!line.empty() && line.back() == '\r') {
    line.remove_suffix(1);
  }
  is_blank = line.empty() || line.front() == '#';
  if (is_blank) {
    return false;
  }
  const auto first = line.find(',');
  if (first == std::string_view::npos) {
    std::int64_t v = 0;
    if (!parse_int(line, v)) {
      return false;
    }
    out = TraceRecord{"", v, v};
    return true;
  }
  const auto second = line.find(',', first + 1);
  if (second == std::string_view::npos || line.find(',', second + 1) != std::string_view::npos) {
    return false;
  }
  std::int64_t ts = 0;
  std::int64_t value = 0;
  if (!parse_int(line.substr(first + 1, second - first - 1), ts) ||
      !parse_int(line.substr(second + 1), value)) {
    return false;
  }
  out = TraceRecord{std::string(line.substr(0, first)), ts, value};
  return true;
}

TraceContents read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read trace " + path.string());
  }
  TraceContents contents;
  std::string line;
  TraceRecord record;
  while (std::getline(in, line)) {
    bool blank = false;
    if (parse_trace_line(line, record, blank)) {
      contents.records.push_back(std::move(record));
    } else if (!blank) {
      ++contents.skipped;
    }
  }
  if (in.bad()) {
    throw IoError("read error on trace " + path.string());
  }
  return contents;
}

IngestResult ingest_trace(const std::filesystem::path& path, TraceColumn column,
                          TraceTransform transform) {
  auto contents = read_trace(path);
  if (contents.records.empty()) {
    throw IoError("trace " + path.string() + " has no parsable records (" +
                  std::to_string(contents.skipped) + " skipped)");
  }
  IngestResult result;
  result.skipped = contents.skipped;
  auto emit = [&](std::int64_t v) {
    result.items.push_back({v, static_cast<std::uint64_t>(result.items.size())});
  };
  if (transform == TraceTransform::kRaw) {
    for (const auto& r : contents.records) {
      emit(column == TraceColumn::kValue ? r.value : r.timestamp);
    }
  } else {
    std::unordered_map<std::string, std::int64_t> last;
    for (const auto& r : contents.records) {
      auto [it, inserted] = last.try_emplace(r.key, r.timestamp);
      if (!inserted) {
        emit(r.timestamp - it->second);
        it->second = r.timestamp;
      }
    }
    if (result.items.empty()) {
      throw IoError("trace " + path.string() + " has no key with two or more timestamps");
    }
  }
  return result;
}

}  // namespace frugal
