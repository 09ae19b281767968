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

#include "doctest.h"

#include <cmath>

using namespace spin_povm;

namespace {

// Textbook Gell-Mann matrices, written out by hand.
std::vector<ComplexMatrix> textbook_gell_mann() {
    const complex_t i(0.0, 1.0);
    std::vector<ComplexMatrix> l(8, ComplexMatrix::Zero(3, 3));
    l[0](0, 1) = l[0](1, 0) = 1.0;
    l[1](0, 1) = -i;
    l[1](1, 0) = i;
    l[2](0, 0) = 1.0;
    l[2](1, 1) = -1.0;
    l[3](0, 2) = l[3](2, 0) = 1.0;
    l[4](0, 2) = -i;
    l[4](2, 0) = i;
    l[5](1, 2) = l[5](2, 1) = 1.0;
    l[6](1, 2) = -i;
    l[6](2, 1) = i;
    const double r = 1.0 / std::sqrt(3.0);
    l[7](0, 0) = r;
    l[7](1, 1) = r;
    l[7](2, 2) = -2.0 * r;
    return l;
}

} // namespace

TEST_CASE("spin 1/2 gives the Pauli matrices") {
    const auto basis = build_generator_basis(Spin::from_twice(1));
    REQUIRE(basis.size() == 3);
    const complex_t i(0.0, 1.0);
    ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, -i, i, 0;
    sz << 1, 0, 0, -1;
    CHECK((basis[0] - sx).norm() == 0.0);
    CHECK((basis[1] - sy).norm() == 0.0);
    CHECK((basis[2] - sz).norm() == 0.0);
    CHECK(basis.orthonormality_residual() < 1e-12);
}

TEST_CASE("spin 1 reduces to the Gell-Mann ordering") {
    const auto basis = build_generator_basis(Spin::from_twice(2));
    REQUIRE(basis.size() == 8);
    const auto expected = textbook_gell_mann();
    for (int a = 0; a < 8; ++a) {
        CAPTURE(a);
        CHECK((basis[a] - expected[static_cast<std::size_t>(a)]).cwiseAbs().maxCoeff() < 1e-15);
    }
    CHECK(basis.orthonormality_residual() < 1e-12);
}

TEST_CASE("spin 3/2 has 15 trace-orthogonal generators") {
    const auto basis = build_generator_basis(Spin::from_twice(3));
    CHECK(basis.size() == 15);
    CHECK(basis.orthonormality_residual() < 1e-12);
    CHECK(basis.hermiticity_residual() < 1e-12);
}

TEST_CASE("generator invariants hold for D = 2..6") {
    for (int tj = 1; tj <= 5; ++tj) {
        CAPTURE(tj);
        const auto basis = build_generator_basis(Spin::from_twice(tj));
        CHECK(basis.size() == (tj + 1) * (tj + 1) - 1);
        CHECK(basis.orthonormality_residual() < 1e-12);
        CHECK(basis.hermiticity_residual() < 1e-12);
    }
}

TEST_CASE("dimension guard") {
    CHECK_NOTHROW((void)build_generator_basis(Spin::from_twice(7)));
    try {
        (void)build_generator_basis(Spin::from_twice(8));
        FAIL("expected a dimension guard");
    } catch (const SpinPovmError &e) {
        CHECK(e.code() == "dimension_guard");
    }
    CHECK(build_generator_basis(Spin::from_twice(8), 9).size() == 80);
}

TEST_CASE("d-symbols vanish for su(2)") {
    const auto d = build_d_tensor(build_generator_basis(Spin::from_twice(1)));
    CHECK(d.canonical().empty());
    CHECK(d.contraction_residual() == 0.0);
    CHECK(d_contraction_constant(Spin::from_twice(1)) == 0.0);
}

TEST_CASE("su(3) d-symbols match the anticommutator trace on textbook matrices") {
    const auto d = build_d_tensor(build_generator_basis(Spin::from_twice(2)));
    const auto l = textbook_gell_mann();
    // Oracle: (1/4) Tr({λ_a, λ_b} λ_c) computed directly on the literals.
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            for (int c = 0; c < 8; ++c) {
                const auto &la = l[static_cast<std::size_t>(a)];
                const auto &lb = l[static_cast<std::size_t>(b)];
                const auto &lc = l[static_cast<std::size_t>(c)];
                const double direct = (0.25 * ((la * lb + lb * la) * lc).trace()).real();
                CHECK(std::abs(d(a, b, c) - direct) < 1e-14);
            }
        }
    }
    CHECK(d(0, 0, 7) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(d(7, 7, 7) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(d(0, 3, 5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d(1, 3, 6) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("su(3) contraction equals 5/3") {
    const auto d = build_d_tensor(build_generator_basis(Spin::from_twice(2)));
    CHECK(d_contraction_constant(Spin::from_twice(2)) == doctest::Approx(5.0 / 3.0));
    CHECK(d.contraction_residual() < 1e-10);
    CHECK(d.trace_residual() < 1e-12);
}

TEST_CASE("d-tensor identities for D = 2..5") {
    for (int tj = 1; tj <= 4; ++tj) {
        CAPTURE(tj);
        const auto basis = build_generator_basis(Spin::from_twice(tj));
        const auto d = build_d_tensor(basis);
        CHECK(d.trace_residual() < 1e-12);
        CHECK(d.contraction_residual() < 1e-10);
        if (tj <= 3) {
            CHECK(d.anticommutator_residual(basis) < 1e-10);
        }
    }
}

TEST_CASE("d-tensor is totally symmetric") {
    const auto d = build_d_tensor(build_generator_basis(Spin::from_twice(3)));
    const int m = d.size();
    const auto dense = d.dense();
    const auto at = [&](int a, int b, int c) {
        return dense[(static_cast<std::size_t>(a) * m + b) * m + c];
    };
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            for (int c = 0; c < m; ++c) {
                const double v = at(a, b, c);
                CHECK(at(a, c, b) == v);
                CHECK(at(b, a, c) == v);
                CHECK(at(c, b, a) == v);
            }
        }
    }
}

TEST_CASE("complex d-symbols flag a broken basis") {
    auto gens = build_generator_basis(Spin::from_twice(2)).generators();
    for (auto &g : gens) {
        g *= complex_t(0.0, 1.0);
    }
    const GeneratorBasis broken(Spin::from_twice(2), gens);
    try {
        (void)build_d_tensor(broken);
        FAIL("expected broken_basis");
    } catch (const SpinPovmError &e) {
        CHECK(e.code() == "broken_basis");
    }
}
