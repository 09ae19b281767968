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

#include "spin_povm/sun_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace spin_povm {

GeneratorBasis::GeneratorBasis(Spin spin, std::vector<ComplexMatrix> generators)
    : spin_(spin), generators_(std::move(generators)) {
    const int d = spin_.dim();
    if (static_cast<int>(generators_.size()) != d * d - 1) {
        throw SpinPovmError("broken_basis", "expected D^2-1 generators");
    }
    for (const auto &g : generators_) {
        if (g.rows() != d || g.cols() != d) {
            throw SpinPovmError("broken_basis", "generator has wrong shape");
        }
    }
}

double GeneratorBasis::orthonormality_residual() const {
    double worst = 0.0;
    const int m = size();
    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            const complex_t tr = (generators_[a] * generators_[b]).trace();
            const double target = a == b ? 2.0 : 0.0;
            worst = std::max(worst, std::abs(tr - target));
        }
    }
    return worst;
}

double GeneratorBasis::hermiticity_residual() const {
    double worst = 0.0;
    for (const auto &g : generators_) {
        worst = std::max(worst, (g - g.adjoint()).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(g.trace()));
    }
    return worst;
}

GeneratorBasis build_generator_basis(Spin spin, int max_dim) {
    const int d = spin.dim();
    if (d > max_dim) {
        throw SpinPovmError("dimension_guard",
                            "dimension 2J+1 = " + std::to_string(d) +
                                " exceeds configured maximum " +
                                std::to_string(max_dim));
    }
    std::vector<ComplexMatrix> gens;
    gens.reserve(static_cast<std::size_t>(d * d - 1));
    const complex_t i_unit(0.0, 1.0);
    for (int k = 1; k < d; ++k) {
        for (int j = 0; j < k; ++j) {
            ComplexMatrix sym = ComplexMatrix::Zero(d, d);
            sym(j, k) = 1.0;
            sym(k, j) = 1.0;
            gens.push_back(std::move(sym));

            ComplexMatrix anti = ComplexMatrix::Zero(d, d);
            anti(j, k) = -i_unit;
            anti(k, j) = i_unit;
            gens.push_back(std::move(anti));
        }
        // diag(1, ..., 1, -k, 0, ...) scaled to Tr(λ²) = 2.
        ComplexMatrix diag = ComplexMatrix::Zero(d, d);
        const double scale = std::sqrt(2.0 / (static_cast<double>(k) * (k + 1)));
        for (int j = 0; j < k; ++j) {
            diag(j, j) = scale;
        }
        diag(k, k) = -static_cast<double>(k) * scale;
        gens.push_back(std::move(diag));
    }
    return GeneratorBasis(spin, std::move(gens));
}

SymmetricStructureTensor::SymmetricStructureTensor(
    Spin spin, int size, std::map<std::array<int, 3>, double> canonical)
    : spin_(spin), size_(size), canonical_(std::move(canonical)) {
    for (const auto &[key, value] : canonical_) {
        std::array<int, 3> idx = key;
        std::sort(idx.begin(), idx.end());
        do {
            expanded_.push_back({idx[0], idx[1], idx[2], value});
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
}

double SymmetricStructureTensor::operator()(int a, int b, int c) const {
    std::array<int, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    const auto it = canonical_.find(key);
    return it == canonical_.end() ? 0.0 : it->second;
}

std::vector<double> SymmetricStructureTensor::dense() const {
    const auto m = static_cast<std::size_t>(size_);
    std::vector<double> out(m * m * m, 0.0);
    for (const auto &e : expanded_) {
        out[(static_cast<std::size_t>(e.a) * m + e.b) * m + e.c] = e.value;
    }
    return out;
}

RealVector SymmetricStructureTensor::contract(const RealVector &x,
                                              const RealVector &y) const {
    RealVector out = RealVector::Zero(size_);
    for (const auto &e : expanded_) {
        out(e.c) += e.value * x(e.a) * y(e.b);
    }
    return out;
}

double SymmetricStructureTensor::trace_residual() const {
    RealVector sums = RealVector::Zero(size_);
    for (const auto &e : expanded_) {
        if (e.b == e.c) {
            sums(e.a) += e.value;
        }
    }
    return size_ == 0 ? 0.0 : sums.cwiseAbs().maxCoeff();
}

double SymmetricStructureTensor::contraction_residual() const {
    // Group entries by their leading index so Σ_bc d_abc d_dbc becomes a
    // sparse dot product of rows.
    RealMatrix gram = RealMatrix::Zero(size_, size_);
    std::map<std::pair<int, int>, std::vector<std::pair<int, double>>> by_bc;
    for (const auto &e : expanded_) {
        by_bc[{e.b, e.c}].emplace_back(e.a, e.value);
    }
    for (const auto &[bc, column] : by_bc) {
        for (const auto &[a, va] : column) {
            for (const auto &[d, vd] : column) {
                gram(a, d) += va * vd;
            }
        }
    }
    const double k = d_contraction_constant(spin_);
    gram.diagonal().array() -= k;
    return size_ == 0 ? 0.0 : gram.cwiseAbs().maxCoeff();
}

double SymmetricStructureTensor::anticommutator_residual(
    const GeneratorBasis &basis) const {
    const int d = basis.dim();
    const double identity_coeff = 4.0 / static_cast<double>(d);
    double worst = 0.0;
    for (int a = 0; a < size_; ++a) {
        for (int b = a; b < size_; ++b) {
            const ComplexMatrix direct = basis[a] * basis[b] + basis[b] * basis[a];
            ComplexMatrix rebuilt = ComplexMatrix::Zero(d, d);
            if (a == b) {
                rebuilt += identity_coeff * ComplexMatrix::Identity(d, d);
            }
            for (int c = 0; c < size_; ++c) {
                const double v = (*this)(a, b, c);
                if (v != 0.0) {
                    rebuilt += 2.0 * v * basis[c];
                }
            }
            worst = std::max(worst, (direct - rebuilt).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double d_contraction_constant(Spin spin) {
    const double tj = spin.twice();
    return (tj - 1.0) * (tj + 3.0) / (tj + 1.0);
}

SymmetricStructureTensor build_d_tensor(const GeneratorBasis &basis) {
    const int m = basis.size();
    std::map<std::array<int, 3>, double> canonical;
    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            const ComplexMatrix anti = basis[a] * basis[b] + basis[b] * basis[a];
            for (int c = b; c < m; ++c) {
                const complex_t v = 0.25 * (anti * basis[c]).trace();
                if (std::abs(v.imag()) > tol::imaginary) {
                    throw SpinPovmError("broken_basis",
                                        "d-symbol has an imaginary part");
                }
                if (std::abs(v.real()) > tol::construction) {
                    canonical.emplace(std::array<int, 3>{a, b, c}, v.real());
                }
            }
        }
    }
    return SymmetricStructureTensor(basis.spin(), m, std::move(canonical));
}

} // namespace spin_povm
