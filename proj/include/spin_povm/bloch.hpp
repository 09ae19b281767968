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
 * Spinors of a spin-J particle and their generalized Bloch vectors.
 *
 * A pure state is written as
 *
 *     ρ = I/(2J+1) + sqrt(J/(2J+1)) n_a λ_a ,
 *
 * so with Tr(λ_a λ_b) = 2 δ_ab the components are recovered as
 * n_a = (1/2) sqrt((2J+1)/J) Tr(ρ λ_a). Pure states have |n| = 1 and in
 * addition satisfy d_abc n_a n_b = (2J-1)/sqrt(J(2J+1)) n_c.
 */
#pragma once

#include "spin_povm/spin.hpp"
#include "spin_povm/sun_algebra.hpp"

#include <utility>

namespace spin_povm {

/// Amplitudes x_i + i y_i of a spin-J pure state, i = 1..2J+1.
struct Spinor {
    Spin spin;
    ComplexVector amplitudes;

    /// Rescales `amplitudes` to unit norm. Throws on a zero vector or a
    /// length other than 2J+1.
    static Spinor normalized(Spin spin, ComplexVector amplitudes);

    /// | ||ψ||^2 - 1 |
    [[nodiscard]] double norm_deviation() const;
};

struct BlochVector {
    Spin spin;
    RealVector components;
};

/// (1/2) sqrt((2J+1)/J): maps Tr(ρ λ_a) to n_a.
[[nodiscard]] double bloch_scale(Spin spin);

/// (2J-1)/sqrt(J(2J+1)), the right-hand side coefficient of the purity
/// constraint and the value of d_abc n_a n_b n_c on pure states.
[[nodiscard]] double purity_coefficient(Spin spin);

/// Throws SpinPovmError("unnormalized_spinor") when the norm is off by more
/// than tol::input_norm.
[[nodiscard]] BlochVector spinor_to_bloch(const Spinor &psi,
                                          const GeneratorBasis &basis);

/// Density matrix I/(2J+1) + sqrt(J/(2J+1)) n·λ.
[[nodiscard]] ComplexMatrix bloch_to_density(const BlochVector &n,
                                             const GeneratorBasis &basis);

/// Component c is Σ_ab d_abc n_a n_b - (2J-1)/sqrt(J(2J+1)) n_c.
[[nodiscard]] RealVector purity_residual(const BlochVector &n,
                                         const SymmetricStructureTensor &d);

/// (Σ d_abc n_a n_b n_c, Σ d_abe d_cde n_a n_b n_c n_d).
[[nodiscard]] std::pair<double, double>
cubic_quartic_checks(const BlochVector &n, const SymmetricStructureTensor &d);

/// |<ψ|ψ'>|^2 = (1 + 2J n·m)/(2J+1). Throws "spin_mismatch".
[[nodiscard]] double bloch_overlap(const BlochVector &n, const BlochVector &m);

/// |<ψ|φ>|^2 straight from amplitudes.
[[nodiscard]] double spinor_overlap(const Spinor &psi, const Spinor &phi);

/**
 * Jacobian of z -> n(z / |z|) with respect to (Re z_1..Re z_D, Im z_1..Im z_D),
 * a (D^2-1) x 2D matrix. The map is blind to the norm and the global phase of
 * z, so at most 4J singular values are nonzero.
 */
[[nodiscard]] RealMatrix bloch_jacobian(const ComplexVector &z,
                                        const GeneratorBasis &basis);

} // namespace spin_povm
