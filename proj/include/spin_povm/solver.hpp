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
 * Numerical search for POVMs with a prescribed number of elements.
 *
 * Each element is parametrized by 2D real amplitude components z (the state
 * is z/|z|) and one unconstrained real t whose softplus is the weight. The
 * residual vector stacks the moment rows of order 0..min(N,3) and the
 * entries of the completeness defect on the symmetric subspace (or, when
 * that subspace is over the guard, the sampled identity Σ c^2 |<φ|Ψ>|^{2N}
 * = 1 on a fixed set of φ). Levenberg-Marquardt with an analytic Jacobian
 * drives its squared norm down from many random starts.
 *
 * The search never certifies itself: a result is `feasible` only when the
 * independent checks in povm.hpp put it below the tolerance.
 */
#pragma once

#include "spin_povm/catalog.hpp"
#include "spin_povm/povm.hpp"
#include "spin_povm/rng.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spin_povm {

struct SearchConfig {
    int restarts = 100;
    int max_iterations = 500;
    double tolerance = 1e-8;
    std::uint64_t seed = 1;
    /// Clamp weights to the known per-element upper bound (N <= 3).
    bool enforce_weight_caps = false;
    /// Stop after the first batch of restarts that contains a feasible one.
    bool stop_at_first_feasible = true;
    int workers = 1;
    std::int64_t max_symmetric_dim = default_max_symmetric_dim;
    /// Sample states used when the symmetric subspace is over the guard.
    int fallback_samples = 0;

    /// Throws SpinPovmError("invalid_config").
    void validate() const;
};

inline constexpr std::string_view search_method =
    "levenberg-marquardt, analytic jacobian";

struct SearchResult {
    std::optional<Povm> best;
    double best_residual = 0.0;
    bool feasible = false;
    int restarts_used = 0;
    int best_restart = -1;
    /// Final verified residual of each restart that ran, in restart order.
    std::vector<double> trace;
    std::string method{search_method};
};

/**
 * Residual vector and Jacobian for a fixed (J, N, n). Stateless apart from
 * precomputed algebra, so one instance can be shared across threads.
 */
class SearchObjective {
  public:
    SearchObjective(Spin spin, int copies, int elements, std::int64_t max_symmetric_dim,
                    int fallback_samples, std::uint64_t seed);

    [[nodiscard]] Spin spin() const noexcept { return spin_; }
    [[nodiscard]] int copies() const noexcept { return copies_; }
    [[nodiscard]] int elements() const noexcept { return elements_; }
    [[nodiscard]] int parameter_count() const noexcept {
        return elements_ * block_size();
    }
    [[nodiscard]] int block_size() const noexcept { return 2 * spin_.dim() + 1; }
    [[nodiscard]] int residual_count() const noexcept { return residual_count_; }
    [[nodiscard]] bool uses_completeness() const noexcept { return space_.has_value(); }

    [[nodiscard]] RealVector residuals(const RealVector &params) const;
    /// Fills both; `jacobian` is residual_count x parameter_count.
    void evaluate(const RealVector &params, RealVector &residuals,
                  RealMatrix &jacobian) const;
    /// Σ residual^2.
    [[nodiscard]] double value(const RealVector &params) const;
    /// Gradient of `value`.
    [[nodiscard]] RealVector gradient(const RealVector &params) const;

    [[nodiscard]] RealVector random_start(Rng &rng) const;
    /// Rescales each amplitude block to unit norm (the objective is blind to it).
    void normalize(RealVector &params) const;
    [[nodiscard]] Povm to_povm(const RealVector &params) const;
    /// Inverse of `to_povm` up to the softplus branch.
    [[nodiscard]] RealVector from_povm(const Povm &povm) const;

    [[nodiscard]] const GeneratorBasis &basis() const noexcept { return basis_; }
    [[nodiscard]] const SymmetricStructureTensor &d_tensor() const noexcept { return d_; }

  private:
    struct ElementTerms;
    ElementTerms element_terms(const RealVector &params, int r, bool with_derivatives) const;
    void assemble(const RealVector &params, RealVector &res, RealMatrix *jac) const;

    Spin spin_;
    int copies_;
    int elements_;
    GeneratorBasis basis_;
    SymmetricStructureTensor d_;
    std::optional<SymmetricSubspace> space_;
    std::vector<ComplexVector> probes_;
    std::vector<std::array<int, 2>> pairs_;
    std::vector<std::array<int, 3>> triples_;
    std::vector<double> triple_targets_;
    RealVector row_scale_;
    int residual_count_ = 0;
};

[[nodiscard]] double softplus(double t);
[[nodiscard]] double softplus_inverse(double w);

/// Multi-start search. Deterministic for fixed (config.seed, n, J, N).
[[nodiscard]] SearchResult search_povm(Spin spin, int copies, int elements,
                                       const SearchConfig &config = {});

struct ScanRow {
    int elements = 0;
    double best_residual = 0.0;
    bool feasible = false;
    int restarts_used = 0;
    [[nodiscard]] std::string status() const;
};

struct ScanTable {
    Spin spin;
    int copies = 1;
    std::vector<ScanRow> rows;
    std::optional<int> smallest_feasible;
    std::optional<std::int64_t> analytic_lower_bound;
    double conjectured = 0.0;
};

/// search_povm for each n in [from, to].
[[nodiscard]] ScanTable scan_min_n(Spin spin, int copies, int from, int to,
                                   const SearchConfig &config = {});

inline constexpr std::string_view not_found_label =
    "no solution found at tolerance within restart budget";

} // namespace spin_povm
