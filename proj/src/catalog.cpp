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

#include <cmath>
#include <numeric>

namespace spin_povm {

namespace {

const complex_t I(0.0, 1.0);

// Listing position k holds sign[k] * n[gell_mann_index[k]].
constexpr std::array<int, 8> listing_index{7, 2, 0, 5, 3, 1, 6, 4};
constexpr std::array<double, 8> listing_sign{1, 1, 1, 1, 1, 1, 1, -1};

Spinor exact_state(Spin spin, std::initializer_list<complex_t> amps) {
    ComplexVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (const auto &a : amps) {
        v(i++) = a;
    }
    return Spinor{spin, std::move(v)};
}

std::string spin_tag(Spin spin) {
    std::string s = spin.to_string();
    for (auto &ch : s) {
        if (ch == '/') {
            ch = '_';
        }
    }
    return s;
}

} // namespace

Povm von_neumann_povm(Spin spin) {
    std::vector<PovmElement> elements;
    for (int k = 0; k < spin.dim(); ++k) {
        ComplexVector e = ComplexVector::Zero(spin.dim());
        e(k) = 1.0;
        elements.push_back({1.0, Spinor{spin, std::move(e)}});
    }
    return Povm(spin, 1, std::move(elements));
}

Povm hypertetrahedron_j1_n2() {
    const Spin one = Spin::from_twice(2);
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);
    // -1/(2√2) ± i √3/(2√2): third components of Ψ5, Ψ6, Ψ8, Ψ9.
    const complex_t up(-1.0 / (2.0 * s2), s3 / (2.0 * s2));
    const complex_t down(-1.0 / (2.0 * s2), -s3 / (2.0 * s2));
    const std::vector<Spinor> states{
        exact_state(one, {1.0, 0.0, 0.0}),
        exact_state(one, {0.5, s3 / 2.0, 0.0}),
        exact_state(one, {0.5, -s3 / 2.0, 0.0}),
        exact_state(one, {0.5, 0.5 * I, 1.0 / s2}),
        exact_state(one, {0.5, 0.5 * I, up}),
        exact_state(one, {0.5, 0.5 * I, down}),
        exact_state(one, {0.5, -0.5 * I, 1.0 / s2}),
        exact_state(one, {0.5, -0.5 * I, up}),
        exact_state(one, {0.5, -0.5 * I, down}),
    };
    // Σ c^2 = 6 spread evenly over nine elements.
    std::vector<PovmElement> elements;
    for (const auto &s : states) {
        elements.push_back({2.0 / 3.0, s});
    }
    return Povm(one, 2, std::move(elements));
}

Povm tetrahedron_j12_n2() {
    const Spin half = Spin::from_twice(1);
    const double a = 1.0 / std::sqrt(3.0);
    const double b = std::sqrt(2.0 / 3.0);
    const double pi = std::acos(-1.0);
    std::vector<PovmElement> elements;
    elements.push_back({0.75, exact_state(half, {1.0, 0.0})});
    for (int k = 0; k < 3; ++k) {
        const complex_t phase = std::polar(1.0, 2.0 * pi * k / 3.0);
        elements.push_back({0.75, exact_state(half, {a, b * phase})});
    }
    return Povm(half, 2, std::move(elements));
}

std::vector<RealVector> hypertetrahedron_listed_bloch() {
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);
    const double s6 = std::sqrt(6.0);
    const std::vector<std::array<double, 8>> rows{
        {0.5, s3 / 2, 0, 0, 0, 0, 0, 0},
        {0.5, -s3 / 4, 0.75, 0, 0, 0, 0, 0},
        {0.5, -s3 / 4, -0.75, 0, 0, 0, 0, 0},
        {-0.25, 0, 0, 0, s6 / 4, s3 / 4, -s6 / 4, 0},
        {-0.25, 0, 0, 3 * s2 / 8, -s6 / 8, s3 / 4, s6 / 8, -3 * s2 / 8},
        {-0.25, 0, 0, -3 * s2 / 8, -s6 / 8, s3 / 4, s6 / 8, 3 * s2 / 8},
        {-0.25, 0, 0, 0, s6 / 4, -s3 / 4, s6 / 4, 0},
        {-0.25, 0, 0, -3 * s2 / 8, -s6 / 8, -s3 / 4, -s6 / 8, -3 * s2 / 8},
        {-0.25, 0, 0, 3 * s2 / 8, -s6 / 8, -s3 / 4, -s6 / 8, 3 * s2 / 8},
    };
    std::vector<RealVector> out;
    for (const auto &row : rows) {
        out.emplace_back(Eigen::Map<const RealVector>(row.data(), 8));
    }
    return out;
}

RealVector to_listing_frame(const RealVector &gell_mann) {
    if (gell_mann.size() != 8) {
        throw SpinPovmError("dimension_mismatch", "listing frame is defined for su(3)");
    }
    RealVector out(8);
    for (int k = 0; k < 8; ++k) {
        out(k) = listing_sign[k] * gell_mann(listing_index[k]);
    }
    return out;
}

RealVector from_listing_frame(const RealVector &listed) {
    if (listed.size() != 8) {
        throw SpinPovmError("dimension_mismatch", "listing frame is defined for su(3)");
    }
    RealVector out(8);
    for (int k = 0; k < 8; ++k) {
        out(listing_index[k]) = listing_sign[k] * listed(k);
    }
    return out;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (int tj = 1; tj <= default_max_dim - 1; ++tj) {
        names.push_back("von-neumann-j" + spin_tag(Spin::from_twice(tj)));
    }
    names.emplace_back("tetrahedron-j1_2-n2");
    names.emplace_back("hypertetrahedron-j1-n2");
    return names;
}

Povm catalog_povm(const std::string &name) {
    if (name == "tetrahedron-j1_2-n2") {
        return tetrahedron_j12_n2();
    }
    if (name == "hypertetrahedron-j1-n2") {
        return hypertetrahedron_j1_n2();
    }
    for (int tj = 1; tj <= default_max_dim - 1; ++tj) {
        const Spin spin = Spin::from_twice(tj);
        if (name == "von-neumann-j" + spin_tag(spin)) {
            return von_neumann_povm(spin);
        }
    }
    throw SpinPovmError("unknown_catalog_entry", "no catalog entry named '" + name + "'");
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw SpinPovmError("invalid_rational", "zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

std::string Rational::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

ParityObstruction n3_parity_obstruction(Spin spin) {
    const std::int64_t tj = spin.twice();
    ParityObstruction out;
    // J(2J+1)^2 / 2 = 2J (2J+1)^2 / 4, likewise for q.
    out.p = make_rational(tj * (tj + 1) * (tj + 1), 4);
    out.q = make_rational(tj * (tj + 3) * (tj + 3), 4);
    out.saturable = out.p.is_integer() && out.q.is_integer();
    // Each element pairs with every other one: p + q = (J+1)(2J+1)^2 - 1.
    const Rational others = make_rational((tj + 2) * (tj + 1) * (tj + 1) - 2, 2);
    const Rational sum = make_rational(out.p.num * out.q.den + out.q.num * out.p.den,
                                       out.p.den * out.q.den);
    if (!(sum == others)) {
        throw SpinPovmError("internal_error", "pair counts do not add up");
    }
    return out;
}

std::string to_string(Saturability s) {
    switch (s) {
    case Saturability::yes:
        return "yes";
    case Saturability::no_by_parity:
        return "no-by-parity";
    case Saturability::unknown:
        break;
    }
    return "unknown";
}

BoundReport min_projector_bound(int copies, Spin spin) {
    const std::int64_t tj = spin.twice();
    BoundReport report;
    report.copies = copies;
    report.spin = spin;
    switch (copies) {
    case 1:
        report.n_lower_bound = tj + 1;
        report.weight_upper_bound = 1.0;
        report.saturable = Saturability::yes;
        report.note = "attained by a von Neumann measurement";
        break;
    case 2:
        report.n_lower_bound = (tj + 1) * (tj + 1);
        report.weight_upper_bound = (tj + 2.0) / (2.0 * (tj + 1.0));
        if (tj <= 2) {
            report.saturable = Saturability::yes;
            report.note = "attained by the (hyper)tetrahedron";
        } else {
            report.saturable = Saturability::unknown;
            report.note = "realizability of the hypertetrahedron by pure states "
                          "is open beyond J = 1";
        }
        break;
    case 3: {
        report.n_lower_bound = (tj + 2) * (tj + 1) * (tj + 1) / 2;
        report.weight_upper_bound = (tj + 3.0) / (3.0 * (tj + 1.0));
        report.parity = n3_parity_obstruction(spin);
        if (!report.parity->saturable) {
            report.saturable = Saturability::no_by_parity;
            report.note = "pair counts are fractional for odd integer spin";
        } else if (tj == 1) {
            report.saturable = Saturability::yes;
            report.note = "six elements suffice for spin 1/2";
        } else {
            report.saturable = Saturability::unknown;
            report.note = "parity permits saturation; attainment is open";
        }
        break;
    }
    default:
        throw SpinPovmError("unsupported_copies",
                            "closed-form bounds are known for N = 1, 2, 3 only");
    }
    return report;
}

double conjectured_scaling(int copies, Spin spin) {
    return std::pow(spin.value(), copies);
}

} // namespace spin_povm
