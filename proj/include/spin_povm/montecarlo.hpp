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
 * Uniform pure-state sampling and Monte Carlo estimates of the average
 * fidelity of a measure-and-guess strategy.
 *
 * Parallel routines split the sample budget over `workers` independent
 * substreams of the master seed and merge the streaming moments, so the
 * result depends on (seed, samples, workers) only.
 */
#pragma once

#include "spin_povm/bloch.hpp"
#include "spin_povm/povm.hpp"
#include "spin_povm/rng.hpp"

#include <cstdint>
#include <vector>

namespace spin_povm {

/**
 * Unitarily invariant random pure state: 2D independent normals as
 * (x_i, y_i), then normalized.
 */
[[nodiscard]] Spinor sample_pure_state(Spin spin, Rng &rng);

/// Welford accumulator with Chan's parallel merge.
class RunningStats {
  public:
    void add(double x);
    void merge(const RunningStats &other);

    [[nodiscard]] std::int64_t count() const noexcept { return count_; }
    [[nodiscard]] double mean() const noexcept { return mean_; }
    /// Unbiased sample variance.
    [[nodiscard]] double variance() const;
    /// Sample standard deviation / sqrt(count).
    [[nodiscard]] double stderr_of_mean() const;

  private:
    std::int64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct VolumeCheck {
    double numeric;
    double analytic;
    [[nodiscard]] double relative_difference() const;
};

/**
 * Total volume of the pure-state space of a D-level system from the
 * element 4 sin^{2D-3}φ cosφ dφ dS_{2D-3}: the φ integral by composite
 * 7-point Gauss-Legendre on `panels` panels over [0, π/2], times the area
 * of the unit (2D-3)-sphere. The closed form is 4 π^{D-1} / (D-1)!.
 */
[[nodiscard]] VolumeCheck volume_check(int dim, int panels = 16);

/// Area of the unit k-sphere in R^{k+1}.
[[nodiscard]] double unit_sphere_area(int k);

struct FidelityEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    std::int64_t samples = 0;
    double analytic = 0.0;
};

/// Per-state fidelity Σ_r c_r^2 |<ψ|Ψ_r>|^{2N} |<ψ|Ψ_r>|^2.
[[nodiscard]] double fidelity_integrand(const Povm &povm, const Spinor &psi);

/**
 * Monte Carlo average fidelity. Rejects the POVM with
 * SpinPovmError("completeness_failed") when its completeness residual (or,
 * above the dimension guard, its sampled residual) exceeds tol::usable_povm.
 * Requires samples >= 1000.
 */
[[nodiscard]] FidelityEstimate estimate_average_fidelity(const Povm &povm,
                                                         std::int64_t samples,
                                                         std::uint64_t seed,
                                                         int workers = 1);

/// p_r = c_r^2 |<ψ|Ψ_r>|^{2N}.
[[nodiscard]] std::vector<double> outcome_probabilities(const Povm &povm,
                                                        const Spinor &psi);

/**
 * Draws an outcome index with probability p_r. Throws "invalid_povm" when
 * Σ p_r is off by more than tol::probability_sum.
 */
[[nodiscard]] int simulate_measurement(const Povm &povm, const Spinor &psi, Rng &rng);

struct SimulationResult {
    std::vector<std::int64_t> histogram;
    RunningStats fidelity; ///< overlap of the guess Ψ_r with the true ψ
};

/// `trials` independent (random ψ, measured outcome) draws.
[[nodiscard]] SimulationResult simulate_trials(const Povm &povm, std::int64_t trials,
                                               std::uint64_t seed, int workers = 1);

/// Throws "completeness_failed" unless the POVM is usable for sampling.
void require_usable_povm(const Povm &povm,
                         std::int64_t max_dim = default_max_symmetric_dim);

} // namespace spin_povm
