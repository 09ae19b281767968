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

/**
 * @file
 * JSON forms of states, POVMs and reports.
 *
 *     state: {"J": "1", "re": [...], "im": [...]}
 *     POVM:  {"J": "1", "N": 2,
 *             "elements": [{"weight": w, "re": [...], "im": [...]}, ...]}
 *
 * "J" may be a string ("1/2", "0.5", "1") or a number.
 */
#pragma once

#include "spin_povm/catalog.hpp"
#include "spin_povm/montecarlo.hpp"
#include "spin_povm/povm.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace spin_povm {

using json = nlohmann::json;

/// Throws SpinPovmError("malformed_input").
[[nodiscard]] Spin spin_from_json(const json &value);

/// Raw amplitudes, not renormalized. Throws "malformed_input".
[[nodiscard]] Spinor spinor_from_json(const json &doc);
[[nodiscard]] json spinor_to_json(const Spinor &psi);

/// Throws "malformed_input" for schema errors; Povm's own checks otherwise.
[[nodiscard]] Povm povm_from_json(const json &doc);
[[nodiscard]] json povm_to_json(const Povm &povm);

/// Canonical text form: two-space indent, trailing newline.
[[nodiscard]] std::string dump_canonical(const json &doc);

/// Reads and parses a JSON file. Throws "io_error" or "malformed_input".
[[nodiscard]] json read_json_file(const std::filesystem::path &path);
/// Parses text. Throws "malformed_input".
[[nodiscard]] json parse_json_text(const std::string &text);

[[nodiscard]] json to_json(const MomentReport &report);
[[nodiscard]] json to_json(const FidelityEstimate &estimate);
[[nodiscard]] json to_json(const BoundReport &report);

} // namespace spin_povm
