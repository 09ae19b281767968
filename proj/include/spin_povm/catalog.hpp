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
 * Known optimal POVMs and the lower bounds on their element count.
 */
#pragma once

#include "spin_povm/povm.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spin_povm {

/// Projective measurement on the computational basis, N = 1, all weights 1.
[[nodiscard]] Povm von_neumann_povm(Spin spin);

/// Nine spin-1 states with pairwise overlap modulus 1/2, weights 2/3, N = 2.
[[nodiscard]] Povm hypertetrahedron_j1_n2();

/// Four spin-1/2 states on a regular tetrahedron, weights 3/4, N = 2.
[[nodiscard]] Povm tetrahedron_j12_n2();

/**
 * Reference Bloch vectors of the spin-1 hypertetrahedron as they are
 * customarily listed. The listing labels su(3) components in the order
 * (λ8, λ3, λ1, λ6, λ4, λ2, λ7, -λ5); use `to_listing_frame` to compare a
 * vector computed in the Gell-Mann order of this library.
 */
[[nodiscard]] std::vector<RealVector> hypertetrahedron_listed_bloch();

/// Signed relabeling from Gell-Mann order to the listing order above.
[[nodiscard]] RealVector to_listing_frame(const RealVector &gell_mann);
/// Inverse of `to_listing_frame`.
[[nodiscard]] RealVector from_listing_frame(const RealVector &listed);

/// Names accepted by `catalog_povm`.
[[nodiscard]] std::vector<std::string> catalog_names();
/// Throws SpinPovmError("unknown_catalog_entry").
[[nodiscard]] Povm catalog_povm(const std::string &name);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    [[nodiscard]] bool is_integer() const noexcept { return den == 1; }
    [[nodiscard]] double value() const noexcept {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    [[nodiscard]] std::string to_string() const;
    friend bool operator==(const Rational &, const Rational &) = default;
};

/// Builds num/den in lowest terms with a positive denominator.
[[nodiscard]] Rational make_rational(std::int64_t num, std::int64_t den);

struct ParityObstruction {
    Rational p; ///< partners at Bloch dot -1/(2J), J(2J+1)^2 / 2
    Rational q; ///< partners at Bloch dot (2J-1)/(2J(2J+3)), J(2J+3)^2 / 2
    bool saturable = false; ///< both counts are integers
};

/**
 * Pair counts an N = 3 POVM with (J+1)(2J+1)^2 elements would need. They
 * are fractional exactly for odd integer J.
 */
[[nodiscard]] ParityObstruction n3_parity_obstruction(Spin spin);

enum class Saturability { yes, no_by_parity, unknown };

[[nodiscard]] std::string to_string(Saturability s);

struct BoundReport {
    int copies = 1;
    Spin spin;
    std::int64_t n_lower_bound = 0;
    std::optional<double> weight_upper_bound;
    Saturability saturable = Saturability::unknown;
    std::optional<ParityObstruction> parity; ///< N = 3 only
    std::string note;
};

/// Lower bound on n and upper bound on each c_r^2, for N in 1..3. Other N
/// throw SpinPovmError("unsupported_copies").
[[nodiscard]] BoundReport min_projector_bound(int copies, Spin spin);

/// J^N. An order-of-magnitude guess for the minimal n, never a bound.
[[nodiscard]] double conjectured_scaling(int copies, Spin spin);

/// Minimal n for spin 1/2 and N = 1..5 from earlier case-by-case work;
/// listed for reference, no states are provided for N = 4, 5.
inline constexpr std::array<int, 5> spin_half_minimal_sizes{2, 4, 6, 10, 12};

} // namespace spin_povm
