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

#include "spin_povm/montecarlo.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace spin_povm {

namespace {

double overlap_power(double overlap, int power) {
    double acc = 1.0;
    for (int k = 0; k < power; ++k) {
        acc *= overlap;
    }
    return acc;
}

/// Runs body(worker, count) on `workers` threads, splitting `total` as evenly
/// as possible with the remainder going to the lowest worker indices.
template <typename Body>
void split_work(std::int64_t total, int workers, Body &&body) {
    workers = std::max(1, workers);
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    const std::int64_t base = total / workers;
    const std::int64_t extra = total % workers;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int k = 0; k < workers; ++k) {
        const std::int64_t count = base + (k < extra ? 1 : 0);
        threads.emplace_back([&body, &errors, k, count] {
            try {
                body(k, count);
            } catch (...) {
                errors[static_cast<std::size_t>(k)] = std::current_exception();
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

} // namespace

Spinor sample_pure_state(Spin spin, Rng &rng) {
    ComplexVector amps(spin.dim());
    for (int i = 0; i < spin.dim(); ++i) {
        const double x = rng.normal();
        const double y = rng.normal();
        amps(i) = complex_t(x, y);
    }
    return Spinor::normalized(spin, std::move(amps));
}

void RunningStats::add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats &other) {
    if (other.count_ == 0) {
        return;
    }
    if (count_ == 0) {
        *this = other;
        return;
    }
    const auto na = static_cast<double>(count_);
    const auto nb = static_cast<double>(other.count_);
    const double delta = other.mean_ - mean_;
    const double total = na + nb;
    mean_ += delta * nb / total;
    m2_ += other.m2_ + delta * delta * na * nb / total;
    count_ += other.count_;
}

double RunningStats::variance() const {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

double RunningStats::stderr_of_mean() const {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
}

double VolumeCheck::relative_difference() const {
    return std::abs(numeric - analytic) / std::abs(analytic);
}

double unit_sphere_area(int k) {
    const double half = 0.5 * (k + 1);
    return 2.0 * std::pow(boost::math::constants::pi<double>(), half) / std::tgamma(half);
}

VolumeCheck volume_check(int dim, int panels) {
    if (dim < 2 || dim > 6) {
        throw SpinPovmError("unsupported_dimension", "volume check needs 2 <= D <= 6");
    }
    if (panels < 1) {
        throw SpinPovmError("invalid_quadrature", "need at least one panel");
    }
    using boost::math::quadrature::gauss;
    const double pi = boost::math::constants::pi<double>();
    const double width = 0.5 * pi / panels;
    const auto integrand = [dim](double phi) {
        return 4.0 * std::pow(std::sin(phi), 2 * dim - 3) * std::cos(phi);
    };
    double radial = 0.0;
    for (int p = 0; p < panels; ++p) {
        radial += gauss<double, 7>::integrate(integrand, p * width, (p + 1) * width);
    }
    VolumeCheck out{};
    out.numeric = radial * unit_sphere_area(2 * dim - 3);
    out.analytic = 4.0 * std::pow(pi, dim - 1) / std::tgamma(static_cast<double>(dim));
    return out;
}

double fidelity_integrand(const Povm &povm, const Spinor &psi) {
    double sum = 0.0;
    for (const auto &e : povm.elements()) {
        const double overlap = std::norm(psi.amplitudes.dot(e.state.amplitudes));
        sum += e.weight * overlap_power(overlap, povm.copies() + 1);
    }
    return sum;
}

void require_usable_povm(const Povm &povm, std::int64_t max_dim) {
    double residual = 0.0;
    if (symmetric_dim(povm.copies(), povm.spin()) <= max_dim) {
        residual = completeness_residual(povm, max_dim);
    } else {
        residual = basiceq_residual(povm, 1000, 0);
    }
    if (!(residual < tol::usable_povm)) {
        throw SpinPovmError("completeness_failed",
                            "POVM completeness residual " + std::to_string(residual) +
                                " exceeds " + std::to_string(tol::usable_povm));
    }
}

FidelityEstimate estimate_average_fidelity(const Povm &povm, std::int64_t samples,
                                           std::uint64_t seed, int workers) {
    if (samples < 1000) {
        throw SpinPovmError("invalid_samples", "fidelity estimate needs >= 1000 samples");
    }
    require_usable_povm(povm);
    workers = std::max(1, workers);
    std::vector<RunningStats> partial(static_cast<std::size_t>(workers));
    split_work(samples, workers, [&](int worker, std::int64_t count) {
        Rng rng(seed, static_cast<std::uint64_t>(worker));
        RunningStats &stats = partial[static_cast<std::size_t>(worker)];
        for (std::int64_t s = 0; s < count; ++s) {
            stats.add(fidelity_integrand(povm, sample_pure_state(povm.spin(), rng)));
        }
    });
    RunningStats total;
    for (const auto &p : partial) {
        total.merge(p);
    }
    FidelityEstimate est;
    est.mean = total.mean();
    est.stderr_of_mean = total.stderr_of_mean();
    est.samples = total.count();
    est.analytic = analytic_fidelity(povm.copies(), povm.spin());
    return est;
}

std::vector<double> outcome_probabilities(const Povm &povm, const Spinor &psi) {
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(povm.size()));
    for (const auto &e : povm.elements()) {
        const double overlap = std::norm(psi.amplitudes.dot(e.state.amplitudes));
        probs.push_back(e.weight * overlap_power(overlap, povm.copies()));
    }
    return probs;
}

int simulate_measurement(const Povm &povm, const Spinor &psi, Rng &rng) {
    const auto probs = outcome_probabilities(povm, psi);
    double total = 0.0;
    for (double p : probs) {
        total += p;
    }
    if (std::abs(total - 1.0) > tol::probability_sum) {
        throw SpinPovmError("invalid_povm", "outcome probabilities sum to " +
                                                std::to_string(total));
    }
    const double u = rng.uniform() * total;
    double acc = 0.0;
    for (std::size_t r = 0; r < probs.size(); ++r) {
        acc += probs[r];
        if (u < acc) {
            return static_cast<int>(r);
        }
    }
    // u landed in the rounding gap at the top; take the last nonzero outcome.
    for (std::size_t r = probs.size(); r-- > 0;) {
        if (probs[r] > 0.0) {
            return static_cast<int>(r);
        }
    }
    return povm.size() - 1;
}

SimulationResult simulate_trials(const Povm &povm, std::int64_t trials,
                                 std::uint64_t seed, int workers) {
    if (trials < 1) {
        throw SpinPovmError("invalid_samples", "trials must be >= 1");
    }
    workers = std::max(1, workers);
    std::vector<SimulationResult> partial(static_cast<std::size_t>(workers));
    split_work(trials, workers, [&](int worker, std::int64_t count) {
        Rng rng(seed, static_cast<std::uint64_t>(worker));
        SimulationResult &out = partial[static_cast<std::size_t>(worker)];
        out.histogram.assign(static_cast<std::size_t>(povm.size()), 0);
        for (std::int64_t t = 0; t < count; ++t) {
            const Spinor psi = sample_pure_state(povm.spin(), rng);
            const int r = simulate_measurement(povm, psi, rng);
            ++out.histogram[static_cast<std::size_t>(r)];
            out.fidelity.add(spinor_overlap(psi, povm[r].state));
        }
    });
    SimulationResult total;
    total.histogram.assign(static_cast<std::size_t>(povm.size()), 0);
    for (const auto &p : partial) {
        for (std::size_t r = 0; r < p.histogram.size(); ++r) {
            total.histogram[r] += p.histogram[r];
        }
        total.fidelity.merge(p.fidelity);
    }
    return total;
}

} // namespace spin_povm
