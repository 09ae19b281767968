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


#include "spin_povm/catalog.hpp"
#include "spin_povm/solver.hpp"

#include "doctest.h"
#include "support.hpp"

#include <cmath>

using namespace spin_povm;

namespace {

Spin spin_of(int twice) { return Spin::from_twice(twice); }

RealVector central_difference_gradient(const SearchObjective &obj, const RealVector &x) {
    RealVector g(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const double h = 1e-6 * std::max(1.0, std::abs(x(k)));
        RealVector plus = x, minus = x;
        plus(k) += h;
        minus(k) -= h;
        g(k) = (obj.value(plus) - obj.value(minus)) / (2 * h);
    }
    return g;
}

void check_gradient(const SearchObjective &obj, std::uint64_t seed, int points) {
    for (int i = 0; i < points; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const RealVector x = obj.random_start(rng);
        const RealVector g = obj.gradient(x);
        const RealVector fd = central_difference_gradient(obj, x);
        REQUIRE((g - fd).norm() <= 1e-5 * std::max(1.0, g.norm()));
    }
}

SearchConfig quick(std::uint64_t seed = 1) {
    SearchConfig c;
    c.seed = seed;
    return c;
}

} // namespace

TEST_CASE("softplus round trip") {
    for (double w : {1e-8, 0.25, 2.0 / 3.0, 1.0, 50.0}) {
        CHECK(softplus(softplus_inverse(w)) == doctest::Approx(w).epsilon(1e-12));
    }
    CHECK(softplus(-800.0) >= 0.0);
    CHECK(std::isfinite(softplus(800.0)));
}

TEST_CASE("residual layout") {
    const SearchObjective two(spin_of(2), 2, 9, default_max_symmetric_dim, 0, 1);
    // 1 + 8 + 36 moment rows, then 6x6 real entries of the completeness defect.
    CHECK(two.residual_count() == 1 + 8 + 36 + 36);
    CHECK(two.uses_completeness());
    CHECK(two.parameter_count() == 9 * 7);

    const SearchObjective three(spin_of(1), 3, 6, default_max_symmetric_dim, 0, 1);
    CHECK(three.residual_count() == 1 + 3 + 6 + 10 + 16);

    const SearchObjective probes(spin_of(2), 2, 9, 3, 40, 1);
    CHECK_FALSE(probes.uses_completeness());
    CHECK(probes.residual_count() == 1 + 8 + 36 + 40);
}

TEST_CASE("analytic gradient matches central differences") {
    check_gradient(SearchObjective(spin_of(2), 2, 9, default_max_symmetric_dim, 0, 1), 3,
                   100);
    check_gradient(SearchObjective(spin_of(1), 3, 6, default_max_symmetric_dim, 0, 1), 5,
                   100);
    check_gradient(SearchObjective(spin_of(3), 1, 5, default_max_symmetric_dim, 0, 1), 7,
                   20);
    check_gradient(SearchObjective(spin_of(2), 2, 9, 3, 30, 1), 9, 20);
}

TEST_CASE("objective is blind to a global unitary") {
    Rng rng(13);
    for (int tj = 1; tj <= 3; ++tj) {
        const Spin spin = spin_of(tj);
        const SearchObjective obj(spin, 2, 6, default_max_symmetric_dim, 0, 1);
        for (int i = 0; i < 10; ++i) {
            const Povm p = obj.to_povm(obj.random_start(rng));
            const ComplexMatrix u = testing::random_unitary(spin.dim(), rng);
            const double a = obj.value(obj.from_povm(p));
            const double b = obj.value(obj.from_povm(testing::rotated(p, u)));
            REQUIRE(std::abs(a - b) < 1e-10);
        }
    }
}

TEST_CASE("objective vanishes on known solutions") {
    const SearchObjective hyper(spin_of(2), 2, 9, default_max_symmetric_dim, 0, 1);
    CHECK(hyper.value(hyper.from_povm(hypertetrahedron_j1_n2())) < 1e-24);
    const SearchObjective tet(spin_of(1), 2, 4, default_max_symmetric_dim, 0, 1);
    CHECK(tet.value(tet.from_povm(tetrahedron_j12_n2())) < 1e-24);
    const Povm broken = hypertetrahedron_j1_n2().scaled(0.9);
    CHECK(hyper.value(hyper.from_povm(broken)) > 1e-3);
}

TEST_CASE("one copy of spin 1/2 needs an antipodal pair") {
    const auto result = search_povm(spin_of(1), 1, 2, quick());
    REQUIRE(result.feasible);
    const Povm &p = *result.best;
    CHECK(p[0].weight == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(p[1].weight == doctest::Approx(1.0).epsilon(1e-6));
    const auto dots = testing::pairwise_bloch_dots(p, build_generator_basis(spin_of(1)));
    CHECK(dots[0] == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("two copies of spin 1/2 recover the tetrahedron") {
    const auto result = search_povm(spin_of(1), 2, 4, quick());
    REQUIRE(result.feasible);
    CHECK(result.best_residual < 1e-8);
    const auto basis = build_generator_basis(spin_of(1));
    CHECK(testing::max_deviation(testing::pairwise_bloch_dots(*result.best, basis),
                                 -1.0 / 3.0) < 1e-6);
}

TEST_CASE("two copies of spin 1 recover the hypertetrahedron") {
    const auto result = search_povm(spin_of(2), 2, 9, quick());
    REQUIRE(result.feasible);
    const auto basis = build_generator_basis(spin_of(2));
    CHECK(testing::max_deviation(testing::pairwise_bloch_dots(*result.best, basis),
                                 -1.0 / 8.0) < 1e-6);
    for (const auto &e : result.best->elements()) {
        CHECK(e.weight == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    }
}

TEST_CASE("feasible results survive independent verification") {
    for (auto [tj, copies, n] : {std::tuple{1, 1, 3}, std::tuple{1, 2, 5},
                                 std::tuple{1, 3, 6}, std::tuple{2, 1, 4}}) {
        CAPTURE(tj);
        CAPTURE(copies);
        CAPTURE(n);
        const Spin spin = spin_of(tj);
        const auto result = search_povm(spin, copies, n, quick());
        REQUIRE(result.feasible);
        const auto basis = build_generator_basis(spin);
        const auto d = build_d_tensor(basis);
        CHECK(verify_povm(*result.best, basis, d).worst() < 10 * quick().tolerance);
        CHECK(completeness_residual(*result.best) < 10 * quick().tolerance);
    }
}

TEST_CASE("search is deterministic and reports its method") {
    SearchConfig c = quick(77);
    c.restarts = 12;
    c.stop_at_first_feasible = false;
    const auto a = search_povm(spin_of(1), 2, 3, c);
    const auto b = search_povm(spin_of(1), 2, 3, c);
    CHECK(a.trace == b.trace);
    CHECK(a.best_restart == b.best_restart);
    CHECK(a.restarts_used == 12);
    CHECK(a.method == std::string(search_method));
    c.workers = 3;
    const auto threaded = search_povm(spin_of(1), 2, 3, c);
    CHECK(threaded.trace == a.trace);
    CHECK(threaded.best_restart == a.best_restart);
}

TEST_CASE("weight caps keep every weight under the bound") {
    SearchConfig c = quick(3);
    c.enforce_weight_caps = true;
    const auto result = search_povm(spin_of(1), 2, 6, c);
    REQUIRE(result.best.has_value());
    for (const auto &e : result.best->elements()) {
        CHECK(e.weight <= 0.75 + 1e-12);
    }
    CHECK(result.feasible);
}

TEST_CASE("scan labels missing solutions as not found") {
    const auto table = scan_min_n(spin_of(1), 2, 2, 5, quick());
    REQUIRE(table.rows.size() == 4);
    CHECK_FALSE(table.rows[0].feasible);
    CHECK_FALSE(table.rows[1].feasible);
    CHECK(table.rows[0].status() == std::string(not_found_label));
    CHECK(table.rows[1].restarts_used == 100);
    CHECK(table.rows[1].best_residual > 1e-6);
    CHECK(table.rows[2].feasible);
    CHECK(table.rows[3].feasible);
    CHECK(table.smallest_feasible == 4);
    CHECK(table.analytic_lower_bound == 4);

    const auto one = scan_min_n(spin_of(2), 1, 2, 4, quick());
    CHECK(one.smallest_feasible == 3);
}

TEST_CASE("odd integer spin cannot meet the three-copy bound") {
    SearchConfig c = quick();
    c.restarts = 8;
    const auto result = search_povm(spin_of(2), 3, 18, c);
    CHECK_FALSE(result.feasible);
    CHECK(result.best_residual > 1e-6);
}

TEST_CASE("invalid search settings") {
    SearchConfig c;
    c.restarts = 0;
    CHECK_THROWS_AS(c.validate(), SpinPovmError);
    c = SearchConfig{};
    c.tolerance = 0.0;
    CHECK_THROWS_AS(c.validate(), SpinPovmError);
    CHECK_THROWS_AS((void)scan_min_n(spin_of(1), 2, 5, 2), SpinPovmError);
}
