// Copyright 2026 The spin-povm Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string_view>

namespace spin_povm {

inline constexpr std::string_view version = "0.1.0";

/// Exit codes of `run_cli`.
inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 1;
inline constexpr int exit_usage = 2;

/**
 * Entry point of the `spin-povm` binary. Writes one JSON document (or CSV
 * with --csv) to `out`; diagnostics go to `err`. Failures print
 * {"error": {"code": ..., "message": ...}, "manifest": ...}.
 */
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace spin_povm
