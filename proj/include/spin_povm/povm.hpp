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
 * Rank-one POVMs on N copies of a spin-J pure state and the conditions an
 * optimal one has to meet.
 *
 * A POVM is a list of weights c_r^2 and states Ψ_r such that
 * Σ_r c_r^2 (|Ψ_r><Ψ_r|)^{⊗N} is the identity on the symmetric subspace of
 * N copies. In Bloch form this becomes a hierarchy of moment equations,
 * with W = (2J+N)! / (N! (2J)!):
 *
 *     Σ c_r^2                    = W
 *     Σ c_r^2 n_a                = 0
 *     Σ c_r^2 n_a n_b            = W δ_ab / (4J(J+1))
 *     Σ c_r^2 n_a n_b n_c        = W sqrt((2J+1)/J) d_abc / (4J(J+1)(2J+3))
 *
 * where the order-k row applies for k <= N. Rows past the cubic one are not
 * evaluated; for N >= 4 the completeness check carries the rest.
 */
#pragma once

#include "spin_povm/bloch.hpp"
#include "spin_povm/spin.hpp"
#include "spin_povm/sun_algebra.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace spin_povm {

/// Default cap on the symmetric-subspace dimension materialized by
/// completeness checks. SPIN_POVM_MAX_DIM overrides it in the CLI.
inline constexpr std::int64_t default_max_symmetric_dim = 10'000;

struct PovmElement {
    double weight; ///< c_r^2
    Spinor state;  ///< Ψ_r
};

class Povm {
  public:
    /// Validates shapes, weights > 0 and unit-norm states.
    Povm(Spin spin, int copies, std::vector<PovmElement> elements);

    [[nodiscard]] Spin spin() const noexcept { return spin_; }
    [[nodiscard]] int copies() const noexcept { return copies_; }
    [[nodiscard]] int size() const noexcept {
        return static_cast<int>(elements_.size());
    }
    [[nodiscard]] const std::vector<PovmElement> &elements() const noexcept {
        return elements_;
    }
    [[nodiscard]] const PovmElement &operator[](int r) const {
        return elements_.at(static_cast<std::size_t>(r));
    }
    [[nodiscard]] double total_weight() const;

    /// Copy with every weight multiplied by `factor`.
    [[nodiscard]] Povm scaled(double factor) const;
    /// Copy without element r.
    [[nodiscard]] Povm without(int r) const;

  private:
    Spin spin_;
    int copies_;
    std::vector<PovmElement> elements_;
};

/// (2J+N)! / (N! (2J)!), the dimension of the N-copy symmetric subspace.
[[nodiscard]] double weight_sum(int copies, Spin spin);

/// (N+1) / (N+2J+1).
[[nodiscard]] double analytic_fidelity(int copies, Spin spin);

/// (4J(J+1)+N)! / (N! (4J(J+1))!). Throws "overflow" past 64 bits.
[[nodiscard]] std::uint64_t equation_count(int copies, Spin spin);

/// Target of the order-2 row per unit δ_ab: W / (4J(J+1)).
[[nodiscard]] double second_moment_coefficient(int copies, Spin spin);
/// Target of the order-3 row per unit d_abc.
[[nodiscard]] double third_moment_coefficient(int copies, Spin spin);

/**
 * Occupation-number basis of the symmetric subspace of N copies of a
 * D-level system, ordered lexicographically with the first level's
 * occupation descending. A product state ψ^{⊗N} has coordinates
 * sqrt(N! / Π m_i!) Π ψ_i^{m_i}.
 */
class SymmetricSubspace {
  public:
    SymmetricSubspace(int levels, int copies);

    [[nodiscard]] int levels() const noexcept { return levels_; }
    [[nodiscard]] int copies() const noexcept { return copies_; }
    [[nodiscard]] int dim() const noexcept {
        return static_cast<int>(occupations_.size());
    }
    [[nodiscard]] const std::vector<std::vector<int>> &occupations() const noexcept {
        return occupations_;
    }

    /// Coordinates of ψ^{⊗N}.
    [[nodiscard]] ComplexVector embed(const ComplexVector &psi) const;

    /// Derivative of embed along `direction` at `psi` (embed is holomorphic).
    [[nodiscard]] ComplexVector embed_derivative(const ComplexVector &psi,
                                                 const ComplexVector &direction) const;

  private:
    int levels_;
    int copies_;
    std::vector<std::vector<int>> occupations_;
    std::vector<double> multinomial_sqrt_;
};

/// Residuals of the optimality conditions, all max-norms.
struct MomentReport {
    double order0_residual = 0.0;
    std::optional<double> order1_residual;
    std::optional<double> order2_residual;
    std::optional<double> order3_residual;
    std::optional<double> completeness_residual;
    std::optional<double> basiceq_residual;

    /// Largest residual present in the report.
    [[nodiscard]] double worst() const;
};

/**
 * Fills the order-0..min(N,3) residuals. Throws "empty_povm" or
 * "spin_mismatch".
 */
[[nodiscard]] MomentReport moment_residuals(const Povm &povm,
                                            const GeneratorBasis &basis,
                                            const SymmetricStructureTensor &d);

/**
 * max |Σ_r c_r^2 P_sym (|Ψ_r><Ψ_r|)^{⊗N} P_sym - I| over the symmetric
 * subspace. Throws "dimension_guard" if that subspace is larger than
 * `max_dim`. Rows are streamed, so memory stays O(n · dim).
 */
[[nodiscard]] double completeness_residual(
    const Povm &povm, std::int64_t max_dim = default_max_symmetric_dim);

/// max over `samples` random pure ψ of |Σ_r c_r^2 |<ψ|Ψ_r>|^{2N} - 1|.
[[nodiscard]] double basiceq_residual(const Povm &povm, int samples,
                                      std::uint64_t seed);

struct VerifyOptions {
    int samples = 1000;
    std::uint64_t seed = 1;
    std::int64_t max_symmetric_dim = default_max_symmetric_dim;
};

/// Moment rows, completeness (when under the guard) and the sampled check.
[[nodiscard]] MomentReport verify_povm(const Povm &povm, const GeneratorBasis &basis,
                                       const SymmetricStructureTensor &d,
                                       const VerifyOptions &options = {});

/// Dimension of the symmetric subspace as an integer, for guard checks.
[[nodiscard]] std::int64_t symmetric_dim(int copies, Spin spin);

} // namespace spin_povm
