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

#include "spin_povm/solver.hpp"

#include "spin_povm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace spin_povm {

namespace {

/// Restarts are dispatched in fixed-size batches so early stopping gives the
/// same answer for any worker count.
constexpr int restart_batch = 8;

/// Inner iterations stop once every residual is this far below the target.
constexpr double inner_margin = 1e-4;

double ipow(double base, int exponent) {
    double acc = 1.0;
    for (int k = 0; k < exponent; ++k) {
        acc *= base;
    }
    return acc;
}

} // namespace

double softplus(double t) {
    return t > 30.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double softplus_inverse(double w) {
    return w > 30.0 ? w + std::log(-std::expm1(-w)) : std::log(std::expm1(w));
}

void SearchConfig::validate() const {
    if (restarts < 1) {
        throw SpinPovmError("invalid_config", "restarts must be >= 1");
    }
    if (!(tolerance > 0.0)) {
        throw SpinPovmError("invalid_config", "tolerance must be > 0");
    }
    if (max_iterations < 1) {
        throw SpinPovmError("invalid_config", "max_iterations must be >= 1");
    }
    if (workers < 1) {
        throw SpinPovmError("invalid_config", "workers must be >= 1");
    }
}

struct SearchObjective::ElementTerms {
    double weight = 0.0;
    double dweight = 0.0;
    ComplexVector psi;
    std::vector<ComplexVector> dpsi; // 2D directions
    RealVector bloch;
    RealMatrix dbloch;               // m x 2D
    ComplexVector embedded;
    std::vector<ComplexVector> dembedded;
    std::vector<complex_t> probe_overlap;
};

SearchObjective::SearchObjective(Spin spin, int copies, int elements,
                                 std::int64_t max_symmetric_dim, int fallback_samples,
                                 std::uint64_t seed)
    : spin_(spin), copies_(copies), elements_(elements),
      basis_(build_generator_basis(spin)), d_(build_d_tensor(basis_)) {
    if (elements < 1 || copies < 1) {
        throw SpinPovmError("invalid_config", "need n >= 1 and N >= 1");
    }
    const int m = basis_.size();
    residual_count_ = 1 + m;
    if (copies_ >= 2) {
        for (int a = 0; a < m; ++a) {
            for (int b = a; b < m; ++b) {
                pairs_.push_back({a, b});
            }
        }
        residual_count_ += static_cast<int>(pairs_.size());
    }
    if (copies_ >= 3) {
        const double coeff = third_moment_coefficient(copies_, spin_);
        for (int a = 0; a < m; ++a) {
            for (int b = a; b < m; ++b) {
                for (int c = b; c < m; ++c) {
                    triples_.push_back({a, b, c});
                    triple_targets_.push_back(coeff * d_(a, b, c));
                }
            }
        }
        residual_count_ += static_cast<int>(triples_.size());
    }
    if (symmetric_dim(copies_, spin_) <= max_symmetric_dim) {
        space_.emplace(spin_.dim(), copies_);
        residual_count_ += space_->dim() * space_->dim();
    } else {
        const int samples = fallback_samples > 0
                                ? fallback_samples
                                : std::max(200, 2 * elements_ * block_size());
        Rng rng(seed, 0xB0B);
        for (int s = 0; s < samples; ++s) {
            probes_.push_back(sample_pure_state(spin_, rng).amplitudes);
        }
        residual_count_ += samples;
    }

    // Rows stand for entries of symmetric tensors and of a hermitian matrix,
    // each listed once; weighting by the square root of the multiplicity
    // turns the sum of squares into the Frobenius norm, which is invariant
    // under a global unitary.
    row_scale_ = RealVector::Ones(residual_count_);
    int row = 1 + m;
    for (const auto &[a, b] : pairs_) {
        row_scale_(row++) = a == b ? 1.0 : std::sqrt(2.0);
    }
    for (const auto &[a, b, c] : triples_) {
        const int orderings = (a == b && b == c) ? 1 : (a == b || b == c) ? 3 : 6;
        row_scale_(row++) = std::sqrt(static_cast<double>(orderings));
    }
    if (space_) {
        const int w = space_->dim();
        for (int i = 0; i < w; ++i) {
            for (int j = 0; j < w; ++j) {
                row_scale_(row + i * w + j) = i == j ? 1.0 : std::sqrt(2.0);
            }
        }
    }
}

SearchObjective::ElementTerms
SearchObjective::element_terms(const RealVector &params, int r,
                               bool with_derivatives) const {
    const int dim = spin_.dim();
    const int m = basis_.size();
    const int offset = r * block_size();
    ElementTerms e;
    ComplexVector z(dim);
    for (int i = 0; i < dim; ++i) {
        z(i) = complex_t(params(offset + i), params(offset + dim + i));
    }
    const double s = z.squaredNorm();
    const double root = std::sqrt(s);
    e.psi = z / root;
    const double t = params(offset + 2 * dim);
    e.weight = softplus(t);
    e.dweight = 1.0 / (1.0 + std::exp(-t));

    const double scale = bloch_scale(spin_);
    e.bloch.resize(m);
    for (int a = 0; a < m; ++a) {
        e.bloch(a) = scale * e.psi.dot(basis_[a] * e.psi).real();
    }
    if (space_) {
        e.embedded = space_->embed(e.psi);
    } else {
        for (const auto &probe : probes_) {
            e.probe_overlap.push_back(probe.dot(e.psi));
        }
    }
    if (!with_derivatives) {
        return e;
    }
    // dψ/dx_j = e_j/|z| - ψ x_j/|z|^2, dψ/dy_j = i e_j/|z| - ψ y_j/|z|^2.
    e.dpsi.reserve(static_cast<std::size_t>(2 * dim));
    for (int part = 0; part < 2; ++part) {
        for (int j = 0; j < dim; ++j) {
            const double comp = part == 0 ? z(j).real() : z(j).imag();
            ComplexVector dir = -e.psi * (comp / s);
            dir(j) += part == 0 ? complex_t(1.0 / root, 0.0) : complex_t(0.0, 1.0 / root);
            e.dpsi.push_back(std::move(dir));
        }
    }
    e.dbloch.resize(m, 2 * dim);
    for (int a = 0; a < m; ++a) {
        const ComplexVector lpsi = basis_[a] * e.psi;
        for (int p = 0; p < 2 * dim; ++p) {
            e.dbloch(a, p) = 2.0 * scale * e.dpsi[static_cast<std::size_t>(p)].dot(lpsi).real();
        }
    }
    if (space_) {
        for (const auto &dir : e.dpsi) {
            e.dembedded.push_back(space_->embed_derivative(e.psi, dir));
        }
    }
    return e;
}

void SearchObjective::assemble(const RealVector &params, RealVector &res,
                               RealMatrix *jac) const {
    const int m = basis_.size();
    const int dim = spin_.dim();
    const int block = block_size();
    const int twod = 2 * dim;
    res = RealVector::Zero(residual_count_);
    if (jac != nullptr) {
        *jac = RealMatrix::Zero(residual_count_, parameter_count());
    }
    const double target0 = weight_sum(copies_, spin_);
    const double target2 = second_moment_coefficient(copies_, spin_);

    // Constant parts of the residuals.
    res(0) = -target0;
    int row = 1 + m;
    for (const auto &[a, b] : pairs_) {
        res(row++) = a == b ? -target2 : 0.0;
    }
    for (double t : triple_targets_) {
        res(row++) = -t;
    }
    const int completeness_row = row;
    if (space_) {
        const int w = space_->dim();
        for (int i = 0; i < w; ++i) {
            res(completeness_row + i * w + i) = -1.0;
        }
    } else {
        for (std::size_t s = 0; s < probes_.size(); ++s) {
            res(completeness_row + static_cast<int>(s)) = -1.0;
        }
    }

    for (int r = 0; r < elements_; ++r) {
        const ElementTerms e = element_terms(params, r, jac != nullptr);
        const int col = r * block;
        const int tcol = col + twod;
        const double w = e.weight;
        const RealVector &n = e.bloch;

        res(0) += w;
        res.segment(1, m) += w * n;
        if (jac != nullptr) {
            (*jac)(0, tcol) += e.dweight;
            jac->block(1, col, m, twod) += w * e.dbloch;
            jac->block(1, tcol, m, 1) += e.dweight * n;
        }

        row = 1 + m;
        for (const auto &[a, b] : pairs_) {
            res(row) += w * n(a) * n(b);
            if (jac != nullptr) {
                jac->block(row, col, 1, twod) +=
                    w * (n(b) * e.dbloch.row(a) + n(a) * e.dbloch.row(b));
                (*jac)(row, tcol) += e.dweight * n(a) * n(b);
            }
            ++row;
        }
        for (const auto &[a, b, c] : triples_) {
            res(row) += w * n(a) * n(b) * n(c);
            if (jac != nullptr) {
                jac->block(row, col, 1, twod) +=
                    w * (n(b) * n(c) * e.dbloch.row(a) + n(a) * n(c) * e.dbloch.row(b) +
                         n(a) * n(b) * e.dbloch.row(c));
                (*jac)(row, tcol) += e.dweight * n(a) * n(b) * n(c);
            }
            ++row;
        }

        if (space_) {
            // Hermitian defect: real parts on and above the diagonal, imaginary
            // parts strictly above it.
            const int sd = space_->dim();
            const ComplexVector &v = e.embedded;
            for (int i = 0; i < sd; ++i) {
                for (int j = i; j < sd; ++j) {
                    const complex_t vv = v(i) * std::conj(v(j));
                    const int re_row = completeness_row + i * sd + j;
                    const int im_row = completeness_row + j * sd + i;
                    res(re_row) += w * vv.real();
                    if (j > i) {
                        res(im_row) += w * vv.imag();
                    }
                    if (jac != nullptr) {
                        for (int p = 0; p < twod; ++p) {
                            const ComplexVector &dv = e.dembedded[static_cast<std::size_t>(p)];
                            const complex_t dvv =
                                dv(i) * std::conj(v(j)) + v(i) * std::conj(dv(j));
                            (*jac)(re_row, col + p) += w * dvv.real();
                            if (j > i) {
                                (*jac)(im_row, col + p) += w * dvv.imag();
                            }
                        }
                        (*jac)(re_row, tcol) += e.dweight * vv.real();
                        if (j > i) {
                            (*jac)(im_row, tcol) += e.dweight * vv.imag();
                        }
                    }
                }
            }
        } else {
            for (std::size_t s = 0; s < probes_.size(); ++s) {
                const complex_t g = e.probe_overlap[s];
                const double overlap = std::norm(g);
                const int prow = completeness_row + static_cast<int>(s);
                const double power = ipow(overlap, copies_);
                res(prow) += w * power;
                if (jac != nullptr) {
                    const double outer = w * copies_ * ipow(overlap, copies_ - 1);
                    for (int p = 0; p < twod; ++p) {
                        const complex_t dg = probes_[s].dot(e.dpsi[static_cast<std::size_t>(p)]);
                        (*jac)(prow, col + p) += outer * 2.0 * (std::conj(g) * dg).real();
                    }
                    (*jac)(prow, tcol) += e.dweight * power;
                }
            }
        }
    }
    res.array() *= row_scale_.array();
    if (jac != nullptr) {
        *jac = row_scale_.asDiagonal() * *jac;
    }
}

RealVector SearchObjective::residuals(const RealVector &params) const {
    RealVector res;
    assemble(params, res, nullptr);
    return res;
}

void SearchObjective::evaluate(const RealVector &params, RealVector &res,
                               RealMatrix &jacobian) const {
    assemble(params, res, &jacobian);
}

double SearchObjective::value(const RealVector &params) const {
    return residuals(params).squaredNorm();
}

RealVector SearchObjective::gradient(const RealVector &params) const {
    RealVector res;
    RealMatrix jac;
    evaluate(params, res, jac);
    return 2.0 * jac.transpose() * res;
}

RealVector SearchObjective::random_start(Rng &rng) const {
    const int dim = spin_.dim();
    RealVector params(parameter_count());
    const double mean_weight = weight_sum(copies_, spin_) / elements_;
    for (int r = 0; r < elements_; ++r) {
        const int offset = r * block_size();
        for (int k = 0; k < 2 * dim; ++k) {
            params(offset + k) = rng.normal();
        }
        const double jitter = 1.0 + 0.2 * (rng.uniform() - 0.5);
        params(offset + 2 * dim) = softplus_inverse(mean_weight * jitter);
    }
    normalize(params);
    return params;
}

void SearchObjective::normalize(RealVector &params) const {
    const int twod = 2 * spin_.dim();
    for (int r = 0; r < elements_; ++r) {
        auto seg = params.segment(r * block_size(), twod);
        const double norm = seg.norm();
        if (norm > 0.0) {
            seg /= norm;
        }
    }
}

Povm SearchObjective::to_povm(const RealVector &params) const {
    const int dim = spin_.dim();
    std::vector<PovmElement> out;
    for (int r = 0; r < elements_; ++r) {
        const int offset = r * block_size();
        ComplexVector z(dim);
        for (int i = 0; i < dim; ++i) {
            z(i) = complex_t(params(offset + i), params(offset + dim + i));
        }
        out.push_back({softplus(params(offset + 2 * dim)), Spinor::normalized(spin_, z)});
    }
    return Povm(spin_, copies_, std::move(out));
}

RealVector SearchObjective::from_povm(const Povm &povm) const {
    if (povm.size() != elements_ || povm.spin() != spin_ || povm.copies() != copies_) {
        throw SpinPovmError("dimension_mismatch", "POVM shape does not match objective");
    }
    const int dim = spin_.dim();
    RealVector params(parameter_count());
    for (int r = 0; r < elements_; ++r) {
        const int offset = r * block_size();
        const auto &amps = povm[r].state.amplitudes;
        for (int i = 0; i < dim; ++i) {
            params(offset + i) = amps(i).real();
            params(offset + dim + i) = amps(i).imag();
        }
        params(offset + 2 * dim) = softplus_inverse(povm[r].weight);
    }
    return params;
}

namespace {

struct RestartOutcome {
    RealVector params;
    double residual = std::numeric_limits<double>::infinity();
};

/// Levenberg-Marquardt on one start; returns the final parameters.
RealVector levenberg_marquardt(const SearchObjective &objective, RealVector params,
                               const SearchConfig &config,
                               std::optional<double> weight_cap) {
    const int block = objective.block_size();
    const int tindex = block - 1;
    const double t_cap = weight_cap ? softplus_inverse(*weight_cap)
                                    : std::numeric_limits<double>::infinity();
    const auto clamp = [&](RealVector &p) {
        for (int r = 0; r < objective.elements(); ++r) {
            p(r * block + tindex) = std::min(p(r * block + tindex), t_cap);
        }
    };
    clamp(params);

    RealVector res;
    RealMatrix jac;
    objective.evaluate(params, res, jac);
    double cost = res.squaredNorm();
    RealMatrix normal = jac.transpose() * jac;
    double mu = 1e-3 * std::max(1.0, normal.diagonal().maxCoeff());
    double nu = 2.0;
    const double stop_at = config.tolerance * inner_margin;

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        if (res.cwiseAbs().maxCoeff() < stop_at) {
            break;
        }
        const RealVector grad = jac.transpose() * res;
        RealMatrix damped = normal;
        damped.diagonal().array() += mu;
        const RealVector step = -damped.ldlt().solve(grad);
        if (!step.allFinite()) {
            break;
        }
        RealVector trial = params + step;
        clamp(trial);
        const RealVector trial_res = objective.residuals(trial);
        const double trial_cost = trial_res.squaredNorm();
        // Gain ratio against the linear model.
        const double predicted = step.dot(mu * step - grad);
        const double rho = predicted > 0.0 ? (cost - trial_cost) / predicted : -1.0;
        if (trial_cost < cost && rho > 0.0) {
            params = std::move(trial);
            objective.normalize(params);
            objective.evaluate(params, res, jac);
            const double improvement = cost - trial_cost;
            cost = res.squaredNorm();
            normal = jac.transpose() * jac;
            mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
            nu = 2.0;
            if (improvement <= 1e-15 * cost) {
                break;
            }
        } else {
            mu *= nu;
            nu *= 2.0;
            if (mu > 1e20) {
                break;
            }
        }
    }
    return params;
}

double verified_residual(const SearchObjective &objective, const Povm &povm,
                         const SearchConfig &config) {
    VerifyOptions options;
    options.max_symmetric_dim = config.max_symmetric_dim;
    // The sampled check is only needed when completeness cannot be formed.
    options.samples = objective.uses_completeness() ? 0 : 1000;
    options.seed = config.seed ^ 0x5EEDULL;
    return verify_povm(povm, objective.basis(), objective.d_tensor(), options).worst();
}

} // namespace

SearchResult search_povm(Spin spin, int copies, int elements, const SearchConfig &config) {
    config.validate();
    const SearchObjective objective(spin, copies, elements, config.max_symmetric_dim,
                                    config.fallback_samples, config.seed);
    std::optional<double> cap;
    if (config.enforce_weight_caps && copies <= 3) {
        cap = min_projector_bound(copies, spin).weight_upper_bound;
    }

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
    SearchResult result;
    int done = 0;
    while (done < config.restarts) {
        const int batch_end = std::min(config.restarts, done + restart_batch);
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(config.workers));
        std::vector<std::thread> threads;
        for (int k = 0; k < config.workers; ++k) {
            threads.emplace_back([&, k] {
                try {
                    for (int idx = done + k; idx < batch_end; idx += config.workers) {
                        Rng rng(config.seed, static_cast<std::uint64_t>(idx));
                        RealVector start = objective.random_start(rng);
                        RestartOutcome &out = outcomes[static_cast<std::size_t>(idx)];
                        out.params = levenberg_marquardt(objective, std::move(start),
                                                         config, cap);
                        out.residual = verified_residual(
                            objective, objective.to_povm(out.params), config);
                    }
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
        done = batch_end;
        if (config.stop_at_first_feasible) {
            const bool any = std::any_of(
                outcomes.begin(), outcomes.begin() + done,
                [&](const RestartOutcome &o) { return o.residual < config.tolerance; });
            if (any) {
                break;
            }
        }
    }

    result.restarts_used = done;
    for (int idx = 0; idx < done; ++idx) {
        const auto &o = outcomes[static_cast<std::size_t>(idx)];
        result.trace.push_back(o.residual);
        // Strict comparison keeps the lowest index among ties.
        if (result.best_restart < 0 || o.residual < result.best_residual) {
            result.best_restart = idx;
            result.best_residual = o.residual;
        }
    }
    const auto &best = outcomes[static_cast<std::size_t>(result.best_restart)];
    result.best = objective.to_povm(best.params);
    result.feasible = result.best_residual < config.tolerance;
    return result;
}

std::string ScanRow::status() const {
    return feasible ? "feasible" : std::string(not_found_label);
}

ScanTable scan_min_n(Spin spin, int copies, int from, int to, const SearchConfig &config) {
    if (from < 1 || to < from) {
        throw SpinPovmError("invalid_range", "need 1 <= from <= to");
    }
    ScanTable table;
    table.spin = spin;
    table.copies = copies;
    table.conjectured = conjectured_scaling(copies, spin);
    if (copies <= 3) {
        table.analytic_lower_bound = min_projector_bound(copies, spin).n_lower_bound;
    }
    for (int n = from; n <= to; ++n) {
        const SearchResult found = search_povm(spin, copies, n, config);
        ScanRow row;
        row.elements = n;
        row.best_residual = found.best_residual;
        row.feasible = found.feasible;
        row.restarts_used = found.restarts_used;
        table.rows.push_back(row);
        if (found.feasible && !table.smallest_feasible) {
            table.smallest_feasible = n;
        }
    }
    return table;
}

} // namespace spin_povm
