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


// Small helpers shared by the unit tests.
#pragma once

#include "spin_povm/bloch.hpp"
#include "spin_povm/montecarlo.hpp"
#include "spin_povm/povm.hpp"
#include "spin_povm/rng.hpp"

#include <Eigen/QR>

#include <vector>

namespace spin_povm::testing {

// Haar-random unitary from the QR factorization of a complex Ginibre matrix,
// with the phases of R divided out.
inline ComplexMatrix random_unitary(int dim, Rng &rng) {
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = complex_t(rng.normal(), rng.normal());
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        q.col(j) *= r(j, j) / std::abs(r(j, j));
    }
    return q;
}

inline Povm rotated(const Povm &povm, const ComplexMatrix &u) {
    std::vector<PovmElement> out;
    for (const auto &e : povm.elements()) {
        out.push_back({e.weight, Spinor{e.state.spin, u * e.state.amplitudes}});
    }
    return Povm(povm.spin(), povm.copies(), std::move(out));
}

// All n(r)·n(s), r < s.
inline std::vector<double> pairwise_bloch_dots(const Povm &povm,
                                               const GeneratorBasis &basis) {
    std::vector<RealVector> ns;
    for (const auto &e : povm.elements()) {
        ns.push_back(spinor_to_bloch(e.state, basis).components);
    }
    std::vector<double> dots;
    for (std::size_t r = 0; r < ns.size(); ++r) {
        for (std::size_t s = r + 1; s < ns.size(); ++s) {
            dots.push_back(ns[r].dot(ns[s]));
        }
    }
    return dots;
}

inline double max_deviation(const std::vector<double> &values, double target) {
    double worst = 0.0;
    for (double v : values) {
        worst = std::max(worst, std::abs(v - target));
    }
    return worst;
}

} // namespace spin_povm::testing
