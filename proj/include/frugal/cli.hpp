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

// Command-line front end: gen, run, bench, groupby, proptest.
//
// Exit status: 0 success, 1 I/O failure, 2 bad flags or malformed spec,
// 3 a property check failed.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace frugal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPropertyFailed = 3;

/// `args` excludes the program name. `out` receives `--out -` output and
/// help text; `err` receives diagnostics.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Manifest path written next to an output file.
std::string manifest_path(const std::string& out_path);

/// Rebuilds an argument list from a manifest's verb and resolved options.
/// The seed is pinned explicitly, so replay does not depend on FRUGAL_SEED.
std::vector<std::string> replay_args(const std::string& manifest_json);

}  // namespace frugal::cli
