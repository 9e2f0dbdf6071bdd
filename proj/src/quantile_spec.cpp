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

#include "frugal/quantile_spec.hpp"

#include <charconv>

namespace frugal {

QuantileSpec QuantileSpec::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw std::invalid_argument("quantile must be written h/k, got '" + std::string(text) + "'");
  }
  auto parse_part = [&](std::string_view part) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw std::invalid_argument("bad quantile component '" + std::string(part) + "'");
    }
    return v;
  };
  return QuantileSpec(parse_part(text.substr(0, slash)), parse_part(text.substr(slash + 1)));
}

std::string QuantileSpec::to_string() const {
  return std::to_string(h_) + "/" + std::to_string(k_);
}

}  // namespace frugal
