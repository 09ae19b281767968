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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "spin_povm/catalog.hpp"
#include "spin_povm/montecarlo.hpp"
#include "spin_povm/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace spin_povm;

namespace {

Spin spin_of(int twice) { return Spin::from_twice(twice); }

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::vector<double> bloch_dots(const Povm &povm) {
    const auto basis = build_generator_basis(povm.spin());
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

double max_dev(const std::vector<double> &v, double target) {
    double worst = 0.0;
    for (double x : v) {
        worst = std::max(worst, std::abs(x - target));
    }
    return worst;
}

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

Outcome generator_algebra() {
    double ortho = 0.0, trace = 0.0, contraction = 0.0;
    for (int tj = 1; tj <= 5; ++tj) {
        const auto basis = build_generator_basis(spin_of(tj));
        ortho = std::max(ortho, basis.orthonormality_residual());
        if (tj <= 4) {
            const auto d = build_d_tensor(basis);
            trace = std::max(trace, d.trace_residual());
            contraction = std::max(contraction, d.contraction_residual());
        }
    }
    return {ortho < 1e-12 && trace < 1e-10 && contraction < 1e-10,
            "trace-orthonormality " + fmt(ortho) + ", d_abb " + fmt(trace) +
                ", d.d contraction " + fmt(contraction)};
}

Outcome purity_constraint() {
    double purity = 0.0, cubic = 0.0, quartic = 0.0;
    for (int tj = 1; tj <= 4; ++tj) {
        const Spin spin = spin_of(tj);
        const auto basis = build_generator_basis(spin);
        const auto d = build_d_tensor(basis);
        const double k = purity_coefficient(spin);
        Rng rng(2024, static_cast<std::uint64_t>(tj));
        for (int i = 0; i < 1000; ++i) {
            const auto n = spinor_to_bloch(sample_pure_state(spin, rng), basis);
            purity = std::max(purity, purity_residual(n, d).cwiseAbs().maxCoeff());
            const auto [c, q] = cubic_quartic_checks(n, d);
            cubic = std::max(cubic, std::abs(c - k));
            quartic = std::max(quartic, std::abs(q - k * k));
        }
    }
    return {purity < 1e-10 && cubic < 1e-10 && quartic < 1e-10,
            "purity " + fmt(purity) + ", cubic " + fmt(cubic) + ", quartic " + fmt(quartic)};
}

Outcome explicit_solution() {
    const Povm hyper = hypertetrahedron_j1_n2();
    const auto basis = build_generator_basis(spin_of(2));
    const auto listed = hypertetrahedron_listed_bloch();
    double listing = 0.0;
    for (int r = 0; r < hyper.size(); ++r) {
        const RealVector n = spinor_to_bloch(hyper[r].state, basis).components;
        listing = std::max(listing, (to_listing_frame(n) - listed[r]).cwiseAbs().maxCoeff());
    }
    const double dots = max_dev(bloch_dots(hyper), -1.0 / 8.0);
    double overlaps = 0.0;
    for (int r = 0; r < hyper.size(); ++r) {
        for (int s = r + 1; s < hyper.size(); ++s) {
            overlaps = std::max(
                overlaps, std::abs(std::sqrt(spinor_overlap(hyper[r].state, hyper[s].state)) - 0.5));
        }
    }
    const double complete = completeness_residual(hyper);
    const double weights = std::abs(hyper.total_weight() - 6.0);
    return {listing < 1e-12 && dots < 1e-12 && overlaps < 1e-12 && complete < 1e-10 &&
                weights < 1e-12,
            "listing " + fmt(listing) + ", dots " + fmt(dots) + ", |overlap|-1/2 " +
                fmt(overlaps) + ", completeness " + fmt(complete) + ", weight sum " +
                fmt(weights)};
}

Outcome fidelity_bound() {
    struct Case {
        const char *label;
        Povm povm;
        double expected;
    };
    const std::vector<Case> cases = {
        {"N=1 J=1/2", von_neumann_povm(spin_of(1)), 2.0 / 3.0},
        {"N=1 J=1", von_neumann_povm(spin_of(2)), 1.0 / 2.0},
        {"N=2 J=1/2", tetrahedron_j12_n2(), 3.0 / 4.0},
        {"N=2 J=1", hypertetrahedron_j1_n2(), 3.0 / 5.0},
    };
    bool pass = true;
    std::ostringstream detail;
    for (const auto &c : cases) {
        const auto est = estimate_average_fidelity(c.povm, 1'000'000, 7, workers());
        const double sigmas = std::abs(est.mean - c.expected) / est.stderr_of_mean;
        pass = pass && sigmas <= 3.0 && std::abs(est.analytic - c.expected) < 1e-15;
        detail << c.label << ": " << fmt(est.mean) << " (" << fmt(sigmas) << " sigma); ";
    }
    return {pass, detail.str()};
}

Outcome bounds_and_obstruction() {
    const bool sequence = min_projector_bound(3, spin_of(1)).n_lower_bound == 6 &&
                          min_projector_bound(3, spin_of(2)).n_lower_bound == 18 &&
                          min_projector_bound(3, spin_of(3)).n_lower_bound == 40;
    const auto j1 = n3_parity_obstruction(spin_of(2));
    const bool parity = j1.p == make_rational(9, 2) && !j1.saturable &&
                        n3_parity_obstruction(spin_of(1)).saturable &&
                        n3_parity_obstruction(spin_of(4)).saturable;
    bool counts = equation_count(1, spin_of(1)) == 4;
    for (int tj = 1; tj <= 4; ++tj) {
        const std::uint64_t closed = static_cast<std::uint64_t>(
            (tj + 1) * (tj + 1) * (tj * tj + 2 * tj + 2) / 2);
        counts = counts && equation_count(2, spin_of(tj)) == closed;
    }
    return {sequence && parity && counts,
            std::string("N=3 sequence ") + (sequence ? "6,18,40" : "wrong") + ", J=1 p=" +
                j1.p.to_string() + ", equation counts " + (counts ? "match" : "differ")};
}

Outcome recover(int twice, int copies, int elements, double target) {
    SearchConfig config;
    config.workers = workers();
    const auto start = std::chrono::steady_clock::now();
    const auto result = search_povm(spin_of(twice), copies, elements, config);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!result.best) {
        return {false, "no candidate"};
    }
    const double dots = max_dev(bloch_dots(*result.best), target);
    return {result.feasible && result.best_residual < 1e-8 && dots < 1e-5 && seconds < 300,
            "residual " + fmt(result.best_residual) + ", dots off by " + fmt(dots) + ", " +
                std::to_string(result.restarts_used) + " restarts, " + fmt(seconds) + " s"};
}

Outcome solver_recovery() {
    const Outcome tet = recover(1, 2, 4, -1.0 / 3.0);
    const Outcome hyper = recover(2, 2, 9, -1.0 / 8.0);
    return {tet.pass && hyper.pass, "J=1/2 n=4: " + tet.detail + "; J=1 n=9: " + hyper.detail};
}

Outcome negative_scan() {
    SearchConfig config;
    config.workers = workers();
    const auto table = scan_min_n(spin_of(1), 2, 2, 3, config);
    bool pass = true;
    std::ostringstream detail;
    for (const auto &row : table.rows) {
        pass = pass && !row.feasible && row.best_residual >= 1e-6 &&
               row.restarts_used == config.restarts && row.status() == not_found_label;
        detail << "n=" << row.elements << " best " << fmt(row.best_residual) << " after "
               << row.restarts_used << " restarts; ";
    }
    detail << "reported as \"" << not_found_label << "\"";
    return {pass, detail.str()};
}

Outcome measure_verification() {
    bool pass = true;
    std::ostringstream detail;
    for (int d = 2; d <= 4; ++d) {
        const auto v = volume_check(d);
        pass = pass && v.relative_difference() < 1e-6;
        detail << "D=" << d << " rel " << fmt(v.relative_difference()) << "; ";
    }
    const auto two = volume_check(2);
    pass = pass && std::abs(two.numeric - 4 * std::numbers::pi) < 1e-6 * 4 * std::numbers::pi;
    detail << "D=2 value " << two.numeric;
    return {pass, detail.str()};
}

// Perturbed copies of the catalog measurements, half of them by amounts far
// below the classification threshold and half far above it.
Outcome oracle_agreement() {
    const std::vector<Povm> seeds = {von_neumann_povm(spin_of(2)), tetrahedron_j12_n2(),
                                     hypertetrahedron_j1_n2(), von_neumann_povm(spin_of(3))};
    const double threshold = 1e-8;
    Rng rng(99);
    int agree = 0, feasible = 0;
    const int total = 50;
    for (int trial = 0; trial < total; ++trial) {
        const Povm &base = seeds[static_cast<std::size_t>(trial) % seeds.size()];
        const bool small = trial % 2 == 0;
        const double log_eps = small ? -14 + 4 * rng.uniform() : -6 + 5 * rng.uniform();
        const double eps = std::pow(10.0, log_eps);
        const bool move_states = rng.uniform() < 0.5;
        std::vector<PovmElement> elements;
        for (const auto &e : base.elements()) {
            double w = e.weight * (1 + eps * (2 * rng.uniform() - 1));
            ComplexVector v = e.state.amplitudes;
            if (move_states) {
                for (Eigen::Index i = 0; i < v.size(); ++i) {
                    v(i) += eps * complex_t(rng.normal(), rng.normal());
                }
                v.normalize();
            }
            elements.push_back({w, Spinor{e.state.spin, v}});
        }
        const Povm p(base.spin(), base.copies(), elements);
        const bool by_completeness = completeness_residual(p) < threshold;
        const bool by_sampling = basiceq_residual(p, 1000, 1000 + trial) < threshold;
        agree += by_completeness == by_sampling ? 1 : 0;
        feasible += by_completeness ? 1 : 0;
    }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) +
                                " classified alike (" + std::to_string(feasible) +
                                " complete at " + fmt(threshold) + ")"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 generator algebra", generator_algebra},
        {"2 purity constraint", purity_constraint},
        {"3 explicit spin-1 solution", explicit_solution},
        {"4 fidelity bound", fidelity_bound},
        {"5 bounds and parity obstruction", bounds_and_obstruction},
        {"6 solver recovery", solver_recovery},
        {"7 negative scan", negative_scan},
        {"8 measure verification", measure_verification},
        {"9 oracle agreement", oracle_agreement},
    };
    int failures = 0;
    for (const auto &[name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += outcome.pass ? 0 : 1;
        std::printf("%s criterion %s [%.2f s]: %s\n", outcome.pass ? "PASS" : "FAIL",
                    name.c_str(), seconds, outcome.detail.c_str());
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
