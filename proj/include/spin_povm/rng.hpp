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

#include <cstdint>
#include <random>
#include <string_view>

namespace spin_povm {

/// Name recorded in run manifests; changing the generator changes this.
inline constexpr std::string_view rng_algorithm =
    "mt19937_64 substreams seeded by splitmix64(seed, stream); "
    "53-bit uniforms; Marsaglia polar normals";

/// SplitMix64 finalizer applied to seed + (stream+1) * golden gamma.
[[nodiscard]] std::uint64_t derive_stream_seed(std::uint64_t seed,
                                               std::uint64_t stream);

/**
 * Reproducible generator. Uniform and normal draws are computed here instead
 * of through <random> distributions, whose output is implementation-defined,
 * so a given seed yields the same numbers with any standard library.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(derive_stream_seed(seed, stream)) {}

    /// Uniform in [0, 1).
    double uniform();
    /// Standard normal.
    double normal();

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace spin_povm
