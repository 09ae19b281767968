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

#include "spin_povm/cli.hpp"

#include "spin_povm/bloch.hpp"
#include "spin_povm/catalog.hpp"
#include "spin_povm/io.hpp"
#include "spin_povm/montecarlo.hpp"
#include "spin_povm/povm.hpp"
#include "spin_povm/solver.hpp"
#include "spin_povm/sun_algebra.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>

namespace spin_povm {

namespace {

struct Options {
    std::string spin = "1/2";
    std::string state;
    std::string file;
    std::string out_path;
    std::string emit;
    bool list = false;
    bool json_flag = false;
    bool csv = false;
    bool weight_caps = false;
    int copies = 1;
    int elements = 1;
    int from = 1;
    int to = 1;
    int dim = 2;
    int panels = 16;
    int samples = 1000;
    std::int64_t fidelity_samples = 1'000'000;
    std::int64_t trials = 100'000;
    int workers = 1;
    int restarts = 100;
    int max_iterations = 500;
    double tol = 1e-8;
    std::uint64_t seed = 1;
    int max_generator_dim = default_max_dim;
};

std::int64_t symmetric_dim_guard() {
    if (const char *env = std::getenv("SPIN_POVM_MAX_DIM"); env != nullptr) {
        try {
            const long long value = std::stoll(env);
            if (value > 0) {
                return value;
            }
        } catch (const std::exception &) {
        }
        throw SpinPovmError("invalid_environment",
                            "SPIN_POVM_MAX_DIM must be a positive integer");
    }
    return default_max_symmetric_dim;
}

json error_object(const std::string &code, const std::string &message) {
    return json{{"code", code}, {"message", message}};
}

class Runner {
  public:
    Runner(std::string command, json config, std::optional<std::uint64_t> seed,
           std::ostream &out)
        : command_(std::move(command)), config_(std::move(config)), seed_(seed),
          out_(out), start_(std::chrono::steady_clock::now()) {}

    [[nodiscard]] json manifest() const {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        json m;
        m["command"] = command_;
        m["config"] = config_;
        m["seed"] = seed_ ? json(*seed_) : json(nullptr);
        m["rng"] = std::string(rng_algorithm);
        m["version"] = std::string(version);
        m["duration_s"] = std::chrono::duration<double>(elapsed).count();
        return m;
    }

    int emit(json body, int code = exit_ok) {
        body["manifest"] = manifest();
        out_ << dump_canonical(body);
        return code;
    }

    int fail(const std::string &code, const std::string &message, json body = json::object()) {
        body["error"] = error_object(code, message);
        return emit(std::move(body), exit_validation);
    }

    void csv(const std::string &text) {
        out_ << "# manifest: " << manifest().dump() << "\n" << text;
    }

  private:
    std::string command_;
    json config_;
    std::optional<std::uint64_t> seed_;
    std::ostream &out_;
    std::chrono::steady_clock::time_point start_;
};

std::string format_number(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path);
    if (!f) {
        throw SpinPovmError("io_error", "cannot write '" + path + "'");
    }
    f << text;
}

json load_state_argument(const std::string &arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && arg[first] == '{') {
        return parse_json_text(arg);
    }
    return read_json_file(arg);
}

SearchConfig search_config(const Options &o) {
    SearchConfig c;
    c.restarts = o.restarts;
    c.max_iterations = o.max_iterations;
    c.tolerance = o.tol;
    c.seed = o.seed;
    c.enforce_weight_caps = o.weight_caps;
    c.workers = o.workers;
    c.max_symmetric_dim = symmetric_dim_guard();
    return c;
}

int cmd_generators(const Options &o, Runner &run) {
    const Spin spin = Spin::parse(o.spin);
    const GeneratorBasis basis = build_generator_basis(spin, o.max_generator_dim);
    const SymmetricStructureTensor d = build_d_tensor(basis);
    json body;
    body["J"] = spin.to_string();
    body["dim"] = spin.dim();
    body["generator_count"] = basis.size();
    body["orthonormality_residual"] = basis.orthonormality_residual();
    body["hermiticity_residual"] = basis.hermiticity_residual();
    body["d_nonzero_canonical"] = d.canonical().size();
    body["d_trace_residual"] = d.trace_residual();
    body["d_contraction_residual"] = d.contraction_residual();
    body["d_contraction_constant"] = d_contraction_constant(spin);
    body["anticommutator_residual"] = d.anticommutator_residual(basis);
    return run.emit(std::move(body));
}

int cmd_verify_state(const Options &o, Runner &run) {
    const Spin spin = Spin::parse(o.spin);
    const Spinor psi = spinor_from_json(load_state_argument(o.state));
    if (psi.spin != spin) {
        throw SpinPovmError("spin_mismatch", "state has J = " + psi.spin.to_string() +
                                                 ", --spin is " + spin.to_string());
    }
    json body;
    body["J"] = spin.to_string();
    body["norm"] = psi.amplitudes.norm();
    const GeneratorBasis basis = build_generator_basis(spin, o.max_generator_dim);
    const SymmetricStructureTensor d = build_d_tensor(basis);
    const BlochVector n = spinor_to_bloch(psi, basis);
    body["bloch"] = std::vector<double>(n.components.data(),
                                        n.components.data() + n.components.size());
    body["bloch_norm"] = n.components.norm();
    const RealVector residual = purity_residual(n, d);
    body["purity_residual"] = residual.size() > 0 ? residual.cwiseAbs().maxCoeff() : 0.0;
    const auto [cubic, quartic] = cubic_quartic_checks(n, d);
    const double k = purity_coefficient(spin);
    body["cubic"] = cubic;
    body["quartic"] = quartic;
    body["cubic_expected"] = k;
    body["quartic_expected"] = k * k;
    return run.emit(std::move(body));
}

int cmd_verify_povm(const Options &o, Runner &run) {
    const Povm povm = povm_from_json(read_json_file(o.file));
    const GeneratorBasis basis = build_generator_basis(povm.spin(), o.max_generator_dim);
    const SymmetricStructureTensor d = build_d_tensor(basis);
    VerifyOptions options;
    options.samples = o.samples;
    options.seed = o.seed;
    options.max_symmetric_dim = symmetric_dim_guard();
    const MomentReport report = verify_povm(povm, basis, d, options);
    json body;
    body["J"] = povm.spin().to_string();
    body["N"] = povm.copies();
    body["elements"] = povm.size();
    body["weight_sum"] = povm.total_weight();
    body["weight_sum_target"] = weight_sum(povm.copies(), povm.spin());
    body["report"] = to_json(report);
    body["tolerance"] = o.tol;
    body["valid"] = report.worst() < o.tol;
    if (report.worst() >= o.tol) {
        return run.fail("verification_failed",
                        "worst residual " + format_number(report.worst()) +
                            " is not below " + format_number(o.tol),
                        std::move(body));
    }
    return run.emit(std::move(body));
}

int cmd_fidelity(const Options &o, Runner &run) {
    const Povm povm = povm_from_json(read_json_file(o.file));
    const FidelityEstimate est =
        estimate_average_fidelity(povm, o.fidelity_samples, o.seed, o.workers);
    if (o.csv) {
        run.csv("mean,stderr,analytic,samples\n" + format_number(est.mean) + "," +
                format_number(est.stderr_of_mean) + "," + format_number(est.analytic) +
                "," + std::to_string(est.samples) + "\n");
        return exit_ok;
    }
    json body = to_json(est);
    body["deviation_in_stderr"] =
        est.stderr_of_mean > 0.0 ? std::abs(est.mean - est.analytic) / est.stderr_of_mean
                                 : 0.0;
    return run.emit(std::move(body));
}

int cmd_simulate(const Options &o, Runner &run) {
    const Povm povm = povm_from_json(read_json_file(o.file));
    require_usable_povm(povm, symmetric_dim_guard());
    const SimulationResult sim = simulate_trials(povm, o.trials, o.seed, o.workers);
    json body;
    body["trials"] = o.trials;
    body["histogram"] = sim.histogram;
    body["empirical_fidelity"] = {{"mean", sim.fidelity.mean()},
                                  {"stderr", sim.fidelity.stderr_of_mean()}};
    body["analytic"] = analytic_fidelity(povm.copies(), povm.spin());
    return run.emit(std::move(body));
}

int cmd_catalog(const Options &o, Runner &run) {
    if (o.emit.empty()) {
        json body;
        body["entries"] = catalog_names();
        return run.emit(std::move(body));
    }
    const Povm povm = catalog_povm(o.emit);
    json body;
    body["name"] = o.emit;
    if (o.out_path.empty()) {
        body["povm"] = povm_to_json(povm);
    } else {
        write_file(o.out_path, dump_canonical(povm_to_json(povm)));
        body["written"] = o.out_path;
    }
    return run.emit(std::move(body));
}

int cmd_bounds(const Options &o, Runner &run) {
    const Spin spin = Spin::parse(o.spin);
    json body = to_json(min_projector_bound(o.copies, spin));
    body["weight_sum"] = weight_sum(o.copies, spin);
    body["equation_count"] = equation_count(o.copies, spin);
    body["conjectured_scaling"] = {{"value", conjectured_scaling(o.copies, spin)},
                                   {"label", "conjecture n_min ~ J^N, not a bound"}};
    if (spin.twice() == 1) {
        body["spin_half_reference_sizes"] = spin_half_minimal_sizes;
    }
    return run.emit(std::move(body));
}

int cmd_search(const Options &o, Runner &run) {
    const Spin spin = Spin::parse(o.spin);
    const SearchResult result = search_povm(spin, o.copies, o.elements, search_config(o));
    json body;
    body["J"] = spin.to_string();
    body["N"] = o.copies;
    body["elements"] = o.elements;
    body["feasible"] = result.feasible;
    body["status"] = result.feasible ? "feasible" : std::string(not_found_label);
    body["best_residual"] = result.best_residual;
    body["best_restart"] = result.best_restart;
    body["restarts_used"] = result.restarts_used;
    body["trace"] = result.trace;
    body["method"] = result.method;
    if (result.best) {
        if (o.out_path.empty()) {
            body["povm"] = povm_to_json(*result.best);
        } else {
            write_file(o.out_path, dump_canonical(povm_to_json(*result.best)));
            body["written"] = o.out_path;
        }
    }
    return run.emit(std::move(body));
}

int cmd_scan(const Options &o, Runner &run) {
    const Spin spin = Spin::parse(o.spin);
    const ScanTable table = scan_min_n(spin, o.copies, o.from, o.to, search_config(o));
    if (o.csv) {
        std::string text = "n,best_residual,feasible,restarts_used,status\n";
        for (const auto &row : table.rows) {
            text += std::to_string(row.elements) + "," + format_number(row.best_residual) +
                    "," + (row.feasible ? "true" : "false") + "," +
                    std::to_string(row.restarts_used) + "," + row.status() + "\n";
        }
        run.csv(text);
        return exit_ok;
    }
    json body;
    body["J"] = spin.to_string();
    body["N"] = o.copies;
    json rows = json::array();
    for (const auto &row : table.rows) {
        rows.push_back({{"n", row.elements},
                        {"best_residual", row.best_residual},
                        {"feasible", row.feasible},
                        {"restarts_used", row.restarts_used},
                        {"status", row.status()}});
    }
    body["rows"] = std::move(rows);
    body["smallest_feasible"] =
        table.smallest_feasible ? json(*table.smallest_feasible) : json(nullptr);
    body["analytic_lower_bound"] =
        table.analytic_lower_bound ? json(*table.analytic_lower_bound) : json(nullptr);
    body["conjectured_scaling"] = {{"value", table.conjectured},
                                   {"label", "conjecture n_min ~ J^N, not a bound"}};
    return run.emit(std::move(body));
}

int cmd_volume_check(const Options &o, Runner &run) {
    const VolumeCheck v = volume_check(o.dim, o.panels);
    json body;
    body["dim"] = o.dim;
    body["numeric"] = v.numeric;
    body["analytic"] = v.analytic;
    body["relative_difference"] = v.relative_difference();
    return run.emit(std::move(body));
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Optimal POVMs for N copies of spin-J pure states", "spin-povm"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);
    Options o;

    const auto add_spin = [&](CLI::App *sub) {
        sub->add_option("--spin", o.spin, "spin J as 1/2, 0.5 or 1")->required();
    };
    const auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", o.seed, "master seed");
    };
    const auto add_search = [&](CLI::App *sub) {
        sub->add_option("--restarts", o.restarts, "random restarts")->check(CLI::PositiveNumber);
        sub->add_option("--max-iterations", o.max_iterations, "iterations per restart")
            ->check(CLI::PositiveNumber);
        sub->add_option("--tol", o.tol, "feasibility tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--workers", o.workers, "threads")->check(CLI::PositiveNumber);
        sub->add_flag("--weight-caps", o.weight_caps, "clamp weights to the known upper bound");
        add_seed(sub);
    };

    std::map<CLI::App *, std::function<int(Runner &)>> handlers;
    std::map<CLI::App *, std::function<json()>> configs;

    auto *gen = app.add_subcommand("generators", "su(2J+1) basis and d-tensor checks");
    add_spin(gen);
    gen->add_flag("--json", o.json_flag, "JSON output (always on)");
    gen->add_option("--max-dim", o.max_generator_dim, "largest allowed 2J+1");
    handlers[gen] = [&](Runner &r) { return cmd_generators(o, r); };
    configs[gen] = [&] { return json{{"spin", o.spin}, {"max_dim", o.max_generator_dim}}; };

    auto *vs = app.add_subcommand("verify-state", "Bloch vector and purity checks of a state");
    add_spin(vs);
    vs->add_option("--state", o.state, "state JSON file or inline JSON")->required();
    handlers[vs] = [&](Runner &r) { return cmd_verify_state(o, r); };
    configs[vs] = [&] { return json{{"spin", o.spin}, {"state", o.state}}; };

    auto *vp = app.add_subcommand("verify-povm", "moment and completeness residuals");
    vp->add_option("--file", o.file, "POVM JSON file")->required();
    vp->add_option("--samples", o.samples, "random states for the sampled check");
    vp->add_option("--tol", o.tol, "pass threshold on the worst residual");
    add_seed(vp);
    handlers[vp] = [&](Runner &r) { return cmd_verify_povm(o, r); };
    configs[vp] = [&] {
        return json{{"file", o.file}, {"samples", o.samples}, {"tol", o.tol},
                    {"max_symmetric_dim", symmetric_dim_guard()}};
    };

    auto *fid = app.add_subcommand("fidelity", "Monte Carlo average fidelity");
    fid->add_option("--file", o.file, "POVM JSON file")->required();
    fid->add_option("--samples", o.fidelity_samples, "random states")
        ->check(CLI::Range(std::int64_t{1000}, std::int64_t{1} << 40));
    fid->add_option("--workers", o.workers, "threads")->check(CLI::PositiveNumber);
    fid->add_flag("--csv", o.csv, "CSV output");
    add_seed(fid);
    handlers[fid] = [&](Runner &r) { return cmd_fidelity(o, r); };
    configs[fid] = [&] {
        return json{{"file", o.file}, {"samples", o.fidelity_samples}, {"workers", o.workers}};
    };

    auto *sim = app.add_subcommand("simulate", "sample measurement outcomes");
    sim->add_option("--file", o.file, "POVM JSON file")->required();
    sim->add_option("--trials", o.trials, "number of trials")->check(CLI::PositiveNumber);
    sim->add_option("--workers", o.workers, "threads")->check(CLI::PositiveNumber);
    add_seed(sim);
    handlers[sim] = [&](Runner &r) { return cmd_simulate(o, r); };
    configs[sim] = [&] {
        return json{{"file", o.file}, {"trials", o.trials}, {"workers", o.workers}};
    };

    auto *cat = app.add_subcommand("catalog", "known optimal POVMs");
    auto *list_flag = cat->add_flag("--list", o.list, "list entries");
    auto *emit_opt = cat->add_option("--emit", o.emit, "entry to emit");
    cat->add_option("--out", o.out_path, "write the POVM to this file")->needs(emit_opt);
    list_flag->excludes(emit_opt);
    handlers[cat] = [&](Runner &r) { return cmd_catalog(o, r); };
    configs[cat] = [&] { return json{{"list", o.list}, {"emit", o.emit}, {"out", o.out_path}}; };

    auto *bnd = app.add_subcommand("bounds", "lower bound on the element count");
    add_spin(bnd);
    bnd->add_option("--copies", o.copies, "N")->required()->check(CLI::PositiveNumber);
    handlers[bnd] = [&](Runner &r) { return cmd_bounds(o, r); };
    configs[bnd] = [&] { return json{{"spin", o.spin}, {"copies", o.copies}}; };

    auto *srch = app.add_subcommand("search", "numerical POVM search");
    add_spin(srch);
    srch->add_option("--copies", o.copies, "N")->required()->check(CLI::PositiveNumber);
    srch->add_option("--elements", o.elements, "n")->required()->check(CLI::PositiveNumber);
    srch->add_option("--out", o.out_path, "write the best POVM to this file");
    add_search(srch);
    handlers[srch] = [&](Runner &r) { return cmd_search(o, r); };
    configs[srch] = [&] {
        return json{{"spin", o.spin},          {"copies", o.copies},
                    {"elements", o.elements},  {"restarts", o.restarts},
                    {"max_iterations", o.max_iterations}, {"tol", o.tol},
                    {"workers", o.workers},    {"weight_caps", o.weight_caps},
                    {"max_symmetric_dim", symmetric_dim_guard()}};
    };

    auto *scn = app.add_subcommand("scan", "search over a range of element counts");
    add_spin(scn);
    scn->add_option("--copies", o.copies, "N")->required()->check(CLI::PositiveNumber);
    scn->add_option("--from", o.from, "smallest n")->required()->check(CLI::PositiveNumber);
    scn->add_option("--to", o.to, "largest n")->required()->check(CLI::PositiveNumber);
    scn->add_flag("--csv", o.csv, "CSV output");
    add_search(scn);
    handlers[scn] = [&](Runner &r) { return cmd_scan(o, r); };
    configs[scn] = [&] {
        return json{{"spin", o.spin},         {"copies", o.copies},
                    {"from", o.from},         {"to", o.to},
                    {"restarts", o.restarts}, {"max_iterations", o.max_iterations},
                    {"tol", o.tol},           {"workers", o.workers},
                    {"weight_caps", o.weight_caps},
                    {"max_symmetric_dim", symmetric_dim_guard()}};
    };

    auto *vol = app.add_subcommand("volume-check", "pure-state volume by quadrature");
    vol->add_option("--dim", o.dim, "D = 2J+1")->required();
    vol->add_option("--panels", o.panels, "Gauss-Legendre panels")->check(CLI::PositiveNumber);
    handlers[vol] = [&](Runner &r) { return cmd_volume_check(o, r); };
    configs[vol] = [&] { return json{{"dim", o.dim}, {"panels", o.panels}}; };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForVersion &) {
        out << version << "\n";
        return exit_ok;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        json args = json::array();
        for (int i = 1; i < argc; ++i) {
            args.push_back(argv[i]);
        }
        const std::string command = argc > 1 ? argv[1] : "";
        Runner runner(command, json{{"argv", args}}, std::nullopt, out);
        return runner.emit(json{{"error", error_object("usage", e.what())}}, exit_usage);
    }

    CLI::App *chosen = app.get_subcommands().front();
    if (chosen == cat && !o.list && o.emit.empty()) {
        o.list = true;
    }
    const bool seeded = chosen == vp || chosen == fid || chosen == sim || chosen == srch ||
                        chosen == scn;
    json config;
    try {
        config = configs.at(chosen)();
    } catch (const SpinPovmError &e) {
        err << e.code() << ": " << e.what() << "\n";
        Runner runner(chosen->get_name(), json::object(), std::nullopt, out);
        return runner.emit(json{{"error", error_object(e.code(), e.what())}}, exit_usage);
    }
    Runner runner(chosen->get_name(), config,
                  seeded ? std::optional<std::uint64_t>(o.seed) : std::nullopt, out);
    try {
        return handlers.at(chosen)(runner);
    } catch (const SpinPovmError &e) {
        err << e.code() << ": " << e.what() << "\n";
        return runner.fail(e.code(), e.what());
    } catch (const std::exception &e) {
        err << "internal_error: " << e.what() << "\n";
        return runner.fail("internal_error", e.what());
    }
}

} // namespace spin_povm
