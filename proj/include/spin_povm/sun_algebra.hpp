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
 * Generalized Gell-Mann basis of su(D) and its totally symmetric structure
 * tensor d_abc.
 *
 * Generators are normalized as Tr(λ_a λ_b) = 2 δ_ab. They are emitted level
 * by level: for each new level k = 1..D-1, first the symmetric and
 * antisymmetric off-diagonal pairs (j, k) for j < k, then the diagonal
 * generator that separates level k from the levels below it. At D = 3 this
 * is exactly the textbook order λ1..λ8, and at D = 2 it is (σx, σy, σz).
 */
#pragma once

#include "spin_povm/spin.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <vector>

namespace spin_povm {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Largest D = 2J + 1 accepted unless the caller raises it explicitly.
inline constexpr int default_max_dim = 8;

class GeneratorBasis {
  public:
    GeneratorBasis(Spin spin, std::vector<ComplexMatrix> generators);

    [[nodiscard]] Spin spin() const noexcept { return spin_; }
    [[nodiscard]] int dim() const noexcept { return spin_.dim(); }
    /// D^2 - 1, i.e. 4J(J+1).
    [[nodiscard]] int size() const noexcept {
        return static_cast<int>(generators_.size());
    }
    [[nodiscard]] const ComplexMatrix &operator[](int a) const {
        return generators_.at(static_cast<std::size_t>(a));
    }
    [[nodiscard]] const std::vector<ComplexMatrix> &generators() const noexcept {
        return generators_;
    }

    /// max_ab |Tr(λ_a λ_b) - 2 δ_ab|.
    [[nodiscard]] double orthonormality_residual() const;
    /// Largest deviation from hermiticity or tracelessness over all generators.
    [[nodiscard]] double hermiticity_residual() const;

  private:
    Spin spin_;
    std::vector<ComplexMatrix> generators_;
};

/**
 * Totally symmetric d_abc, stored sparsely under its sorted index triple.
 * `expanded()` lists every ordered (a, b, c) with a nonzero value, which is
 * what contractions iterate over.
 */
class SymmetricStructureTensor {
  public:
    struct Entry {
        int a, b, c;
        double value;
    };

    SymmetricStructureTensor(Spin spin, int size,
                             std::map<std::array<int, 3>, double> canonical);

    [[nodiscard]] Spin spin() const noexcept { return spin_; }
    /// Number of generators the indices run over.
    [[nodiscard]] int size() const noexcept { return size_; }

    /// d_abc for any index order; zero when absent.
    [[nodiscard]] double operator()(int a, int b, int c) const;

    [[nodiscard]] const std::map<std::array<int, 3>, double> &
    canonical() const noexcept {
        return canonical_;
    }
    [[nodiscard]] const std::vector<Entry> &expanded() const noexcept {
        return expanded_;
    }

    /// Dense copy, only for small D.
    [[nodiscard]] std::vector<double> dense() const;

    /// v_c = Σ_ab d_abc x_a y_b.
    [[nodiscard]] RealVector contract(const RealVector &x,
                                      const RealVector &y) const;

    /// max_a |Σ_b d_abb|.
    [[nodiscard]] double trace_residual() const;
    /// max_ad |Σ_bc d_abc d_dbc - (2J-1)(2J+3)/(2J+1) δ_ad|.
    [[nodiscard]] double contraction_residual() const;
    /// Max deviation between {λ_a, λ_b} and 4/(2J+1) δ_ab I + 2 d_abc λ_c.
    [[nodiscard]] double anticommutator_residual(const GeneratorBasis &basis) const;

  private:
    Spin spin_;
    int size_;
    std::map<std::array<int, 3>, double> canonical_;
    std::vector<Entry> expanded_;
};

/// (2J-1)(2J+3)/(2J+1), the value of d_abc d_dbc on the diagonal.
[[nodiscard]] double d_contraction_constant(Spin spin);

/// Throws SpinPovmError("dimension_guard") when 2J+1 > max_dim.
[[nodiscard]] GeneratorBasis build_generator_basis(Spin spin,
                                                   int max_dim = default_max_dim);

/// d_abc = (1/4) Tr({λ_a, λ_b} λ_c); throws "broken_basis" on a complex entry.
[[nodiscard]] SymmetricStructureTensor build_d_tensor(const GeneratorBasis &basis);

} // namespace spin_povm
