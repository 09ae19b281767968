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
 * Spin quantum number stored as the integer 2J, plus the library-wide
 * error type and tolerance constants.
 */
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spin_povm {

using complex_t = std::complex<double>;

/**
 * Error carrying a stable machine-readable code (e.g. "completeness_failed")
 * next to the human-readable message. The CLI forwards `code()` verbatim.
 */
class SpinPovmError : public std::runtime_error {
  public:
    SpinPovmError(std::string code, const std::string &message)
        : std::runtime_error(message), code_(std::move(code)) {}

    [[nodiscard]] const std::string &code() const noexcept { return code_; }

  private:
    std::string code_;
};

/**
 * Half-integer spin J, held as the positive integer 2J so that equality and
 * hashing never touch floating point.
 */
class Spin {
  public:
    constexpr Spin() = default;

    /// Builds J = twice / 2. Throws for twice <= 0.
    static Spin from_twice(int twice);

    /// Accepts "1/2", "3/2", "0.5", "1", "1.5", "2".
    static Spin parse(std::string_view text);

    [[nodiscard]] constexpr int twice() const noexcept { return twice_; }
    [[nodiscard]] constexpr int dim() const noexcept { return twice_ + 1; }
    [[nodiscard]] constexpr double value() const noexcept {
        return 0.5 * static_cast<double>(twice_);
    }
    [[nodiscard]] constexpr bool is_integer() const noexcept {
        return twice_ % 2 == 0;
    }

    /// Canonical text: "1/2", "1", "3/2", ...
    [[nodiscard]] std::string to_string() const;

    friend constexpr bool operator==(Spin, Spin) = default;

  private:
    constexpr explicit Spin(int twice) : twice_(twice) {}
    int twice_ = 1;
};

/// Tolerance ladder shared across modules.
namespace tol {
/// Construction-level checks (generator orthonormality, hermiticity).
inline constexpr double construction = 1e-12;
/// Derived identities (d-tensor contractions, purity residuals).
inline constexpr double derived = 1e-10;
/// Imaginary part allowed on a quantity that must be real.
inline constexpr double imaginary = 1e-10;
/// Deviation from unit norm accepted on an input spinor.
inline constexpr double input_norm = 1e-8;
/// Completeness residual accepted for a usable POVM in sampling routines.
inline constexpr double usable_povm = 1e-8;
/// Outcome-probability sum deviation that flags an invalid POVM.
inline constexpr double probability_sum = 1e-6;
} // namespace tol

} // namespace spin_povm
