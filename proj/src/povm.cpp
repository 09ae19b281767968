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

#include "spin_povm/povm.hpp"

#include "spin_povm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spin_povm {

namespace {

/// C(top, k) exactly, or nullopt past 64 bits.
std::optional<std::uint64_t> exact_binomial(std::uint64_t top, std::uint64_t k) {
    k = std::min(k, top - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (top - k + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            return std::nullopt;
        }
    }
    return static_cast<std::uint64_t>(acc);
}

double log_binomial(double top, double k) {
    return std::lgamma(top + 1.0) - std::lgamma(k + 1.0) - std::lgamma(top - k + 1.0);
}

void require_copies(int copies) {
    if (copies < 1) {
        throw SpinPovmError("invalid_copies", "copy count N must be >= 1");
    }
}

void enumerate_occupations(int level, int remaining, std::vector<int> &current,
                           std::vector<std::vector<int>> &out) {
    const int levels = static_cast<int>(current.size());
    if (level == levels - 1) {
        current[level] = remaining;
        out.push_back(current);
        return;
    }
    for (int m = remaining; m >= 0; --m) {
        current[level] = m;
        enumerate_occupations(level + 1, remaining - m, current, out);
    }
}

complex_t ipow(complex_t base, int exponent) {
    complex_t acc(1.0, 0.0);
    for (int k = 0; k < exponent; ++k) {
        acc *= base;
    }
    return acc;
}

double ipow(double base, int exponent) {
    double acc = 1.0;
    for (int k = 0; k < exponent; ++k) {
        acc *= base;
    }
    return acc;
}

} // namespace

Povm::Povm(Spin spin, int copies, std::vector<PovmElement> elements)
    : spin_(spin), copies_(copies), elements_(std::move(elements)) {
    require_copies(copies_);
    if (elements_.empty()) {
        throw SpinPovmError("empty_povm", "POVM has no elements");
    }
    for (std::size_t r = 0; r < elements_.size(); ++r) {
        const auto &e = elements_[r];
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw SpinPovmError("nonpositive_weight",
                                "element " + std::to_string(r) +
                                    " has a non-positive weight");
        }
        if (e.state.spin != spin_ || e.state.amplitudes.size() != spin_.dim()) {
            throw SpinPovmError("dimension_mismatch",
                                "element " + std::to_string(r) +
                                    " does not match spin " + spin_.to_string());
        }
        if (e.state.norm_deviation() > tol::input_norm) {
            throw SpinPovmError("unnormalized_spinor",
                                "element " + std::to_string(r) + " is not normalized");
        }
    }
}

double Povm::total_weight() const {
    double sum = 0.0;
    for (const auto &e : elements_) {
        sum += e.weight;
    }
    return sum;
}

Povm Povm::scaled(double factor) const {
    auto copy = elements_;
    for (auto &e : copy) {
        e.weight *= factor;
    }
    return Povm(spin_, copies_, std::move(copy));
}

Povm Povm::without(int r) const {
    auto copy = elements_;
    copy.erase(copy.begin() + r);
    return Povm(spin_, copies_, std::move(copy));
}

double weight_sum(int copies, Spin spin) {
    require_copies(copies);
    const auto top = static_cast<std::uint64_t>(spin.twice() + copies);
    if (const auto exact = exact_binomial(top, static_cast<std::uint64_t>(copies));
        exact && *exact < (std::uint64_t{1} << 53)) {
        return static_cast<double>(*exact);
    }
    return std::exp(log_binomial(static_cast<double>(top), copies));
}

std::int64_t symmetric_dim(int copies, Spin spin) {
    require_copies(copies);
    const auto exact = exact_binomial(static_cast<std::uint64_t>(spin.twice() + copies),
                                      static_cast<std::uint64_t>(copies));
    if (!exact || *exact > static_cast<std::uint64_t>(
                               std::numeric_limits<std::int64_t>::max())) {
        return std::numeric_limits<std::int64_t>::max();
    }
    return static_cast<std::int64_t>(*exact);
}

double analytic_fidelity(int copies, Spin spin) {
    require_copies(copies);
    return (copies + 1.0) / (copies + spin.twice() + 1.0);
}

std::uint64_t equation_count(int copies, Spin spin) {
    require_copies(copies);
    const auto tj = static_cast<std::uint64_t>(spin.twice());
    const std::uint64_t generators = tj * (tj + 2); // 4J(J+1)
    const auto exact =
        exact_binomial(generators + static_cast<std::uint64_t>(copies),
                       static_cast<std::uint64_t>(copies));
    if (!exact) {
        throw SpinPovmError("overflow", "equation count exceeds 64 bits");
    }
    return *exact;
}

double second_moment_coefficient(int copies, Spin spin) {
    const double j = spin.value();
    return weight_sum(copies, spin) / (4.0 * j * (j + 1.0));
}

double third_moment_coefficient(int copies, Spin spin) {
    const double j = spin.value();
    return weight_sum(copies, spin) * std::sqrt((2.0 * j + 1.0) / j) /
           (4.0 * j * (j + 1.0) * (2.0 * j + 3.0));
}

SymmetricSubspace::SymmetricSubspace(int levels, int copies)
    : levels_(levels), copies_(copies) {
    std::vector<int> current(static_cast<std::size_t>(levels), 0);
    enumerate_occupations(0, copies, current, occupations_);
    multinomial_sqrt_.reserve(occupations_.size());
    const double log_n_fact = std::lgamma(copies + 1.0);
    for (const auto &occ : occupations_) {
        double log_mult = log_n_fact;
        for (int m : occ) {
            log_mult -= std::lgamma(m + 1.0);
        }
        multinomial_sqrt_.push_back(std::sqrt(std::round(std::exp(log_mult))));
    }
}

ComplexVector SymmetricSubspace::embed(const ComplexVector &psi) const {
    ComplexVector v(dim());
    for (int k = 0; k < dim(); ++k) {
        const auto &occ = occupations_[static_cast<std::size_t>(k)];
        complex_t prod(multinomial_sqrt_[static_cast<std::size_t>(k)], 0.0);
        for (int i = 0; i < levels_; ++i) {
            prod *= ipow(psi(i), occ[static_cast<std::size_t>(i)]);
        }
        v(k) = prod;
    }
    return v;
}

ComplexVector SymmetricSubspace::embed_derivative(const ComplexVector &psi,
                                                  const ComplexVector &direction) const {
    ComplexVector dv = ComplexVector::Zero(dim());
    for (int k = 0; k < dim(); ++k) {
        const auto &occ = occupations_[static_cast<std::size_t>(k)];
        complex_t total(0.0, 0.0);
        for (int i = 0; i < levels_; ++i) {
            const int mi = occ[static_cast<std::size_t>(i)];
            if (mi == 0 || direction(i) == complex_t(0.0, 0.0)) {
                continue;
            }
            complex_t term = static_cast<double>(mi) * ipow(psi(i), mi - 1) * direction(i);
            for (int l = 0; l < levels_; ++l) {
                if (l != i) {
                    term *= ipow(psi(l), occ[static_cast<std::size_t>(l)]);
                }
            }
            total += term;
        }
        dv(k) = multinomial_sqrt_[static_cast<std::size_t>(k)] * total;
    }
    return dv;
}

double MomentReport::worst() const {
    double w = order0_residual;
    for (const auto &r : {order1_residual, order2_residual, order3_residual,
                          completeness_residual, basiceq_residual}) {
        if (r) {
            w = std::max(w, *r);
        }
    }
    return w;
}

MomentReport moment_residuals(const Povm &povm, const GeneratorBasis &basis,
                              const SymmetricStructureTensor &d) {
    if (povm.spin() != basis.spin() || povm.spin() != d.spin()) {
        throw SpinPovmError("spin_mismatch", "POVM spin does not match the basis");
    }
    const Spin spin = povm.spin();
    const int copies = povm.copies();
    const int m = basis.size();
    const double target = weight_sum(copies, spin);

    std::vector<RealVector> bloch;
    std::vector<double> weights;
    for (const auto &e : povm.elements()) {
        bloch.push_back(spinor_to_bloch(e.state, basis).components);
        weights.push_back(e.weight);
    }

    MomentReport report;
    report.order0_residual = std::abs(povm.total_weight() - target);
    if (copies >= 1) {
        RealVector first = RealVector::Zero(m);
        for (std::size_t r = 0; r < bloch.size(); ++r) {
            first += weights[r] * bloch[r];
        }
        report.order1_residual = first.cwiseAbs().maxCoeff();
    }
    if (copies >= 2) {
        RealMatrix second = RealMatrix::Zero(m, m);
        for (std::size_t r = 0; r < bloch.size(); ++r) {
            second.noalias() += weights[r] * bloch[r] * bloch[r].transpose();
        }
        second.diagonal().array() -= second_moment_coefficient(copies, spin);
        report.order2_residual = second.cwiseAbs().maxCoeff();
    }
    if (copies >= 3) {
        const double coeff = third_moment_coefficient(copies, spin);
        double worst = 0.0;
        for (int a = 0; a < m; ++a) {
            for (int b = a; b < m; ++b) {
                for (int c = b; c < m; ++c) {
                    double sum = 0.0;
                    for (std::size_t r = 0; r < bloch.size(); ++r) {
                        sum += weights[r] * bloch[r](a) * bloch[r](b) * bloch[r](c);
                    }
                    worst = std::max(worst, std::abs(sum - coeff * d(a, b, c)));
                }
            }
        }
        report.order3_residual = worst;
    }
    return report;
}

double completeness_residual(const Povm &povm, std::int64_t max_dim) {
    const std::int64_t dim = symmetric_dim(povm.copies(), povm.spin());
    if (dim > max_dim) {
        throw SpinPovmError("dimension_guard",
                            "symmetric subspace dimension " + std::to_string(dim) +
                                " exceeds guard " + std::to_string(max_dim));
    }
    const SymmetricSubspace space(povm.spin().dim(), povm.copies());
    const int w = space.dim();
    const int n = povm.size();
    ComplexMatrix embedded(w, n);
    ComplexMatrix weighted(w, n);
    for (int r = 0; r < n; ++r) {
        embedded.col(r) = space.embed(povm[r].state.amplitudes);
        weighted.col(r) = povm[r].weight * embedded.col(r);
    }
    constexpr int block = 256;
    double worst = 0.0;
    for (int row = 0; row < w; row += block) {
        const int rows = std::min(block, w - row);
        ComplexMatrix part = weighted.middleRows(row, rows) * embedded.adjoint();
        for (int i = 0; i < rows; ++i) {
            part(i, row + i) -= 1.0;
        }
        worst = std::max(worst, part.cwiseAbs().maxCoeff());
    }
    return worst;
}

double basiceq_residual(const Povm &povm, int samples, std::uint64_t seed) {
    if (samples < 1) {
        throw SpinPovmError("invalid_samples", "samples must be >= 1");
    }
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Spinor psi = sample_pure_state(povm.spin(), rng);
        double sum = 0.0;
        for (const auto &e : povm.elements()) {
            sum += e.weight * ipow(std::norm(psi.amplitudes.dot(e.state.amplitudes)),
                                   povm.copies());
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

MomentReport verify_povm(const Povm &povm, const GeneratorBasis &basis,
                         const SymmetricStructureTensor &d,
                         const VerifyOptions &options) {
    MomentReport report = moment_residuals(povm, basis, d);
    if (symmetric_dim(povm.copies(), povm.spin()) <= options.max_symmetric_dim) {
        report.completeness_residual =
            completeness_residual(povm, options.max_symmetric_dim);
    }
    if (options.samples > 0) {
        report.basiceq_residual = basiceq_residual(povm, options.samples, options.seed);
    }
    return report;
}

} // namespace spin_povm
