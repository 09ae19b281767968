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

#include "spin_povm/bloch.hpp"

#include <cmath>

namespace spin_povm {

namespace {

void require_dim(const ComplexVector &amps, Spin spin) {
    if (amps.size() != spin.dim()) {
        throw SpinPovmError("dimension_mismatch",
                            "spinor has " + std::to_string(amps.size()) +
                                " amplitudes, spin " + spin.to_string() +
                                " needs " + std::to_string(spin.dim()));
    }
}

void require_same_spin(Spin a, Spin b) {
    if (a != b) {
        throw SpinPovmError("spin_mismatch", "spin " + a.to_string() +
                                                 " does not match spin " +
                                                 b.to_string());
    }
}

} // namespace

Spinor Spinor::normalized(Spin spin, ComplexVector amplitudes) {
    require_dim(amplitudes, spin);
    const double norm = amplitudes.norm();
    if (norm == 0.0) {
        throw SpinPovmError("unnormalized_spinor", "zero spinor");
    }
    amplitudes /= norm;
    return Spinor{spin, std::move(amplitudes)};
}

double Spinor::norm_deviation() const {
    return std::abs(amplitudes.squaredNorm() - 1.0);
}

double bloch_scale(Spin spin) {
    const double j = spin.value();
    return 0.5 * std::sqrt((2.0 * j + 1.0) / j);
}

double purity_coefficient(Spin spin) {
    const double j = spin.value();
    return (2.0 * j - 1.0) / std::sqrt(j * (2.0 * j + 1.0));
}

BlochVector spinor_to_bloch(const Spinor &psi, const GeneratorBasis &basis) {
    require_same_spin(psi.spin, basis.spin());
    require_dim(psi.amplitudes, psi.spin);
    if (psi.norm_deviation() > tol::input_norm) {
        throw SpinPovmError("unnormalized_spinor",
                            "spinor norm deviates from 1 by " +
                                std::to_string(psi.norm_deviation()));
    }
    const double scale = bloch_scale(psi.spin);
    RealVector n(basis.size());
    for (int a = 0; a < basis.size(); ++a) {
        // Tr(ρ λ) = <ψ|λ|ψ>, real for hermitian λ.
        n(a) = scale * psi.amplitudes.dot(basis[a] * psi.amplitudes).real();
    }
    return BlochVector{psi.spin, std::move(n)};
}

ComplexMatrix bloch_to_density(const BlochVector &n, const GeneratorBasis &basis) {
    require_same_spin(n.spin, basis.spin());
    const int d = basis.dim();
    const double j = n.spin.value();
    const double coeff = std::sqrt(j / (2.0 * j + 1.0));
    ComplexMatrix rho = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    for (int a = 0; a < basis.size(); ++a) {
        rho += coeff * n.components(a) * basis[a];
    }
    return rho;
}

RealVector purity_residual(const BlochVector &n, const SymmetricStructureTensor &d) {
    require_same_spin(n.spin, d.spin());
    return d.contract(n.components, n.components) -
           purity_coefficient(n.spin) * n.components;
}

std::pair<double, double> cubic_quartic_checks(const BlochVector &n,
                                               const SymmetricStructureTensor &d) {
    require_same_spin(n.spin, d.spin());
    const RealVector v = d.contract(n.components, n.components);
    return {v.dot(n.components), v.squaredNorm()};
}

double bloch_overlap(const BlochVector &n, const BlochVector &m) {
    require_same_spin(n.spin, m.spin);
    const double tj = n.spin.twice();
    return (1.0 + tj * n.components.dot(m.components)) / (tj + 1.0);
}

double spinor_overlap(const Spinor &psi, const Spinor &phi) {
    require_same_spin(psi.spin, phi.spin);
    return std::norm(psi.amplitudes.dot(phi.amplitudes));
}

RealMatrix bloch_jacobian(const ComplexVector &z, const GeneratorBasis &basis) {
    const int d = basis.dim();
    const int m = basis.size();
    const double s = z.squaredNorm();
    const double scale = bloch_scale(basis.spin());
    RealMatrix jac(m, 2 * d);
    for (int a = 0; a < m; ++a) {
        const ComplexVector az = basis[a] * z;
        const double f = z.dot(az).real();
        for (int j = 0; j < d; ++j) {
            // d(z†Az)/dx_j = 2 Re (Az)_j, d(z†Az)/dy_j = 2 Im (Az)_j.
            const double dfx = 2.0 * az(j).real();
            const double dfy = 2.0 * az(j).imag();
            const double dsx = 2.0 * z(j).real();
            const double dsy = 2.0 * z(j).imag();
            jac(a, j) = scale * (dfx / s - f * dsx / (s * s));
            jac(a, d + j) = scale * (dfy / s - f * dsy / (s * s));
        }
    }
    return jac;
}

} // namespace spin_povm
