#include "wro/cli.hpp"

#include "wro/errors.hpp"
#include "wro/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>

namespace wro::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Params {
    double a = 0.0;
    double b = 1.0;
    std::size_t n = 1024;
    std::uint64_t seed = 1;
    std::string op = "A";
    std::string path_kind = "brownian";
    std::string path_file;
    std::size_t paths = 100;
    std::string levels;
    std::size_t k = 20;
    std::string out;
    bool skip_general = false;
};

struct Outcome {
    std::vector<std::pair<fs::path, std::string>> files;
    json results = json::object();
    bool passed = true;
};

class Stopwatch {
public:
    explicit Stopwatch(json& timings) : timings_(timings) {}
    template <class F>
    auto stage(const std::string& name, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            record(name, t0);
        } else {
            auto r = f();
            record(name, t0);
            return r;
        }
    }

private:
    void record(const std::string& name, std::chrono::steady_clock::time_point t0) {
        const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
        timings_[name] = dt.count();
    }
    json& timings_;
};

/// <out> with its extension replaced, e.g. kernel.csv -> kernel.summary.json.
fs::path sibling(const fs::path& out, const std::string& suffix) {
    fs::path p = out;
    p.replace_extension();
    return fs::path(p.string() + suffix);
}

std::vector<std::size_t> parse_levels(const std::string& text) {
    std::vector<std::size_t> levels;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            throw ConfigurationError("--levels: '" + item + "' is not a positive integer");
        }
        if (pos != item.size() || v == 0) throw ConfigurationError("--levels: '" + item + "' is not a positive integer");
        levels.push_back(static_cast<std::size_t>(v));
    }
    if (levels.empty()) throw ConfigurationError("--levels: empty list");
    return levels;
}

BrownianPath acquire_path(const Params& p) {
    if (!p.path_file.empty()) return io::load_path(p.path_file);
    const Grid grid(p.a, p.b, p.n);
    if (p.path_kind == "brownian") return sample_brownian(grid, p.seed);
    return deterministic_path(p.path_kind, grid);
}

json path_parameters(const Params& p) {
    json j;
    if (!p.path_file.empty()) {
        j["path"] = p.path_file;
    } else {
        j["a"] = p.a;
        j["b"] = p.b;
        j["n"] = p.n;
        j["path-kind"] = p.path_kind;
        j["seed"] = p.seed;
    }
    return j;
}

std::vector<SampledFunction> test_functions(const Grid& g, int count) {
    std::vector<SampledFunction> hs;
    for (int k = 1; k <= count; ++k) hs.push_back(sine_basis(g, k));
    return hs;
}

// ---------------------------------------------------------------- commands

Outcome cmd_simulate(const Params& p, Stopwatch& sw) {
    Outcome o;
    const BrownianPath path = sw.stage("simulate", [&] { return acquire_path(p); });
    o.files.emplace_back(p.out, io::dump(io::to_json(path)));
    o.results["W_b"] = path[path.grid().n()];
    o.results["quadratic_variation"] = quadratic_variation(path);
    return o;
}

Outcome cmd_homogeneous(const Params& p, Stopwatch& sw) {
    Outcome o;
    const OperatorKind kind = parse_operator_kind(p.op);
    const BrownianPath path = sw.stage("path", [&] { return acquire_path(p); });
    const HomogeneousSolutions sol = sw.stage("solve", [&] { return solve(kind, path); });

    double alpha_gap = 0.0;
    double min_alpha = sol.alpha_closed.front();
    for (std::size_t j = 0; j < sol.alpha.size(); ++j) {
        alpha_gap = std::max(alpha_gap, std::abs(sol.alpha[j] - sol.alpha_closed[j]) / sol.alpha_closed[j]);
        min_alpha = std::min(min_alpha, sol.alpha_closed[j]);
    }
    const std::size_t nb = sol.u.size() - 1;
    const double boundary_err = std::max({std::abs(sol.u[0]), std::abs(sol.u[nb] - 1.0), std::abs(sol.v[nb])});

    json residuals = json::array();
    double worst = 0.0;
    sw.stage("residuals", [&] {
        for (const auto& h : test_functions(path.grid(), 4)) {
            const double r = homogeneous_residual(kind, sol, h, path);
            residuals.push_back(r);
            worst = std::max(worst, r);
        }
    });

    o.results["kind"] = to_string(kind);
    o.results["denom"] = sol.denom;
    o.results["log_denom"] = sol.log_denom;
    o.results["v_at_a"] = sol.v[0];
    o.results["min_alpha"] = min_alpha;
    o.results["alpha_relative_gap"] = alpha_gap;
    o.results["boundary_error"] = boundary_err;
    o.results["weak_residuals_h1_to_h4"] = residuals;
    o.results["weak_solution_expected"] = sol.weak_solution_expected;
    o.passed = min_alpha > 0.0 && alpha_gap <= 1e-10 && boundary_err <= 1e-12;
    if (kind == OperatorKind::A) {
        o.results["residual_threshold"] = 1e-5;
        o.passed = o.passed && worst <= 1e-5;
    }
    o.files.emplace_back(p.out, io::homogeneous_csv(sol));
    return o;
}

Outcome cmd_green(const Params& p, Stopwatch& sw) {
    Outcome o;
    const OperatorKind kind = parse_operator_kind(p.op);
    const BrownianPath path = sw.stage("path", [&] { return acquire_path(p); });
    const GreenKernel gk = sw.stage("kernel", [&] { return kernel(kind, solve(kind, path)); });

    double min_entry = 0.0;
    double sym_defect = 0.0;
    double scale = 0.0;
    sw.stage("checks", [&] {
        const auto alpha = gk.alpha();
        const std::size_t N = gk.grid().size();
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = 0; j < N; ++j) {
                const double gij = gk(i, j);
                min_entry = std::min(min_entry, gij);
                scale = std::max(scale, std::abs(gij * alpha[j]));
                if (j > i) sym_defect = std::max(sym_defect, std::abs(gij * alpha[j] - gk(j, i) * alpha[i]));
            }
        }
    });
    json summary = io::kernel_summary(gk);
    summary["min_entry"] = min_entry;
    summary["symmetrizability_defect"] = scale > 0.0 ? sym_defect / scale : sym_defect;
    o.results = summary;
    o.passed = min_entry >= 0.0 && gk.diag_continuity_error() <= 1e-12 &&
               summary["symmetrizability_defect"].get<double>() <= 1e-12;

    const std::string csv = sw.stage("csv", [&] { return io::kernel_csv(gk); });
    o.files.emplace_back(p.out, csv);
    o.files.emplace_back(sibling(p.out, ".summary.json"), io::dump(summary));
    return o;
}

Outcome cmd_invert_check(const Params& p, Stopwatch& sw) {
    Outcome o;
    const OperatorKind kind = parse_operator_kind(p.op);
    const BrownianPath path = sw.stage("path", [&] { return acquire_path(p); });
    const GreenKernel gk = sw.stage("kernel", [&] { return kernel(kind, solve(kind, path)); });
    const Grid& g = path.grid();

    const std::vector<std::pair<std::string, SampledFunction>> fs_ = {
        {"h1", sine_basis(g, 1)}, {"h2", sine_basis(g, 2)}, {"one", SampledFunction::constant(g, 1.0)}};
    const double threshold = kind == OperatorKind::A ? 1e-4 : 0.05;

    json table = json::array();
    double worst = 0.0;
    sw.stage("residuals", [&] {
        for (const auto& [fname, f] : fs_) {
            int k = 1;
            for (const auto& h : test_functions(g, 4)) {
                const double r = inverse_residual(kind, gk, f, h, path);
                const double rel = r / (l2_norm(f) * l2_norm(h));
                worst = std::max(worst, rel);
                table.push_back({{"f", fname}, {"h", "h" + std::to_string(k)}, {"residual", r}, {"normalized", rel}});
                ++k;
            }
        }
    });

    json report;
    report["kind"] = to_string(kind);
    report["n"] = g.n();
    report["path_origin"] = path.origin().tag();
    report["threshold"] = threshold;
    report["max_normalized_residual"] = worst;
    report["residuals"] = table;

    o.results["max_normalized_residual"] = worst;
    o.results["threshold"] = threshold;
    o.passed = worst <= threshold;
    o.files.emplace_back(p.out, io::dump(report));
    o.files.emplace_back(sibling(p.out, ".tf.csv"), io::function_csv(apply(gk, SampledFunction::constant(g, 1.0))));
    return o;
}

Outcome cmd_spectrum(const Params& p, Stopwatch& sw) {
    Outcome o;
    const OperatorKind kind = parse_operator_kind(p.op);
    const BrownianPath path = sw.stage("path", [&] { return acquire_path(p); });
    const GreenKernel gk = sw.stage("kernel", [&] { return kernel(kind, solve(kind, path)); });
    const Eigen::MatrixXd M = sw.stage("discretize", [&] { return discretize(gk); });
    SpectrumReport rep =
        sw.stage("eigensolve", [&] { return eigenvalues(M, gk, p.k, SpectrumOptions{!p.skip_general}); });
    rep.seed = path.seed();

    json weak = json::array();
    double worst_weak = 0.0;
    sw.stage("weak_relation", [&] {
        for (const auto& h : test_functions(path.grid(), 4)) {
            const double r = weak_eigen_residual(kind, gk, rep.eigenvalues.front(), rep.leading_eigvec, h, path);
            weak.push_back(r);
            worst_weak = std::max(worst_weak, r);
        }
    });

    json report = io::to_json(rep);
    report["weak_eigen_residuals_h1_to_h4"] = weak;

    const bool real_ok = rep.symmetry_defect <= 1e-12 && (!rep.max_imag_checked || rep.max_imag <= 1e-8 * rep.norm_M);
    const bool trace_ok = rep.trace_gap <= 1e-8 * rep.abs_eigen_sum;
    const bool perron_ok = rep.eigenvalues.front() > 0.0 && rep.perron_min_entry >= -1e-8;
    o.results["realness_ok"] = real_ok;
    o.results["trace_ok"] = trace_ok;
    o.results["perron_ok"] = perron_ok;
    o.results["leading_eigenvalue"] = rep.eigenvalues.front();
    o.results["max_weak_eigen_residual"] = worst_weak;
    o.passed = real_ok && trace_ok && perron_ok;
    // the weak relation is pathwise only for A; for B it carries Ito discretization noise
    if (kind == OperatorKind::A) o.passed = o.passed && worst_weak <= 1e-3;

    o.files.emplace_back(p.out, io::dump(report));
    o.files.emplace_back(sibling(p.out, ".csv"), io::spectrum_csv(rep));
    return o;
}

Outcome cmd_ensemble(const Params& p, Stopwatch& sw) {
    Outcome o;
    const OperatorKind kind = parse_operator_kind(p.op);
    const Grid grid(p.a, p.b, p.n);
    const EnsembleReport rep = sw.stage("ensemble", [&] { return ensemble(kind, grid, p.paths, p.k, p.seed); });
    o.results["mean"] = rep.mean;
    o.results["stddev"] = rep.stddev;
    o.results["failures"] = rep.failures.size();
    o.passed = rep.failures.empty();
    o.files.emplace_back(p.out, io::dump(io::to_json(rep)));
    o.files.emplace_back(sibling(p.out, ".csv"), io::ensemble_csv(rep));
    return o;
}

Outcome cmd_wong_zakai(const Params& p, Stopwatch& sw) {
    Outcome o;
    const std::vector<std::size_t> levels = parse_levels(p.levels);
    const BrownianPath path = sw.stage("path", [&] { return acquire_path(p); });
    const WongZakaiReport rep = sw.stage("compare", [&] { return wong_zakai_compare(path, levels); });
    double node_err = 0.0;
    double ratio_err = 0.0;
    for (const auto& l : rep.levels) {
        node_err = std::max(node_err, l.sup_node_rel_dist_S);
        ratio_err = std::max(ratio_err, l.ratio_identity_error);
    }
    o.results["max_node_rel_dist_S"] = node_err;
    o.results["max_ratio_identity_error"] = ratio_err;
    o.passed = node_err <= 1e-12 && ratio_err <= 1e-12;
    o.files.emplace_back(p.out, io::dump(io::to_json(rep)));
    return o;
}

Outcome cmd_forms_check(const Params& p, Stopwatch& sw) {
    Outcome o;
    const OperatorKind kind = parse_operator_kind(p.op);
    const BrownianPath path = sw.stage("path", [&] { return acquire_path(p); });
    const FormInequalityReport rep = sw.stage("inequalities", [&] {
        return inequality_report(kind, path, static_cast<int>(p.k), InequalityOptions{20, path.seed(), 1e-12});
    });
    o.results = io::to_json(rep);
    o.passed = rep.all_ok();
    o.files.emplace_back(p.out, io::dump(o.results));
    return o;
}

struct Command {
    std::string name;
    std::string description;
    std::string default_out;
    std::function<Outcome(const Params&, Stopwatch&)> body;
    std::function<json(const Params&)> parameters;
};

std::vector<Command> commands() {
    auto with = [](std::function<json(const Params&, json)> extra) {
        return [extra](const Params& p) { return extra(p, path_parameters(p)); };
    };
    auto op_params = with([](const Params& p, json j) {
        j["op"] = p.op;
        return j;
    });
    return {
        {"simulate", "Sample (or build) an environment path and write it as JSON", "path.json", cmd_simulate,
         path_parameters},
        {"homogeneous", "Homogeneous solutions u, v, alpha as CSV", "homogeneous.csv", cmd_homogeneous, op_params},
        {"green", "Green kernel matrix CSV plus summary JSON", "kernel.csv", cmd_green, op_params},
        {"invert-check", "Right-inverse residuals |eps(Tf,h) - <f,h>|", "invert_check.json", cmd_invert_check,
         op_params},
        {"spectrum", "Eigenvalues of the discretized Green operator", "spectrum.json", cmd_spectrum,
         with([](const Params& p, json j) {
             j["op"] = p.op;
             j["k"] = p.k;
             j["skip-general"] = p.skip_general;
             return j;
         })},
        {"ensemble", "Leading-eigenvalue statistics over Brownian environments", "ensemble.json", cmd_ensemble,
         [](const Params& p) {
             json j;
             j["a"] = p.a;
             j["b"] = p.b;
             j["n"] = p.n;
             j["op"] = p.op;
             j["seed"] = p.seed;
             j["paths"] = p.paths;
             j["k"] = p.k;
             return j;
         }},
        {"wong-zakai", "Polygonal-approximation solutions against both candidate limits", "wong_zakai.json",
         cmd_wong_zakai, with([](const Params& p, json j) {
             j["levels"] = p.levels;
             return j;
         })},
        {"forms-check", "Semibound, coercivity and Poincare margins of the form split", "forms_check.json",
         cmd_forms_check, with([](const Params& p, json j) {
             j["op"] = p.op;
             j["k"] = p.k;
             return j;
         })},
    };
}

std::vector<std::string> args_from_manifest(const fs::path& file) {
    json m;
    try {
        m = json::parse(io::read_file(file));
    } catch (const json::parse_error& ex) {
        throw ConfigurationError("cannot parse manifest " + file.string() + ": " + ex.what());
    }
    std::vector<std::string> args{m.at("command").get<std::string>()};
    for (const auto& [key, value] : m.at("parameters").items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
            continue;
        }
        args.push_back("--" + key);
        if (value.is_number_float()) {
            args.push_back(io::format_double(value.get<double>()));
        } else if (value.is_string()) {
            args.push_back(value.get<std::string>());
        } else {
            args.push_back(value.dump());
        }
    }
    args.push_back("--out");
    args.push_back(m.at("outputs").at(0).get<std::string>());
    return args;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args = args_in;
    if (args.size() >= 2 && args[0] == "--replay") {
        try {
            args = args_from_manifest(args[1]);
        } catch (const std::exception& ex) {
            err << "error: " << ex.what() << '\n';
            return kExitUsage;
        }
    }

    CLI::App app{"Weak random operator laboratory: paths, Green kernels, spectra", "wro"};
    app.require_subcommand(1);
    std::string replay_unused;
    app.add_option("--replay", replay_unused, "Rerun the command recorded in a manifest");

    Params p;
    const std::vector<Command> cmds = commands();
    std::vector<CLI::App*> subs;
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.description);
        const bool needs_path = c.name != "ensemble";
        sub->add_option("--a", p.a, "Left endpoint")->capture_default_str();
        sub->add_option("--b", p.b, "Right endpoint")->capture_default_str();
        sub->add_option("--n", p.n, "Number of subintervals")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--seed", p.seed, "Path seed (master seed for ensemble)")->capture_default_str();
        sub->add_option("--out", p.out, "Primary output file")->default_str(c.default_out);
        if (c.name != "simulate" && c.name != "wong-zakai") {
            sub->add_option("--op", p.op, "Operator kind")->capture_default_str()->check(CLI::IsMember({"A", "B"}));
        }
        if (needs_path) {
            sub->add_option("--path-kind", p.path_kind, "brownian | zero | linear | sine")
                ->capture_default_str()
                ->check(CLI::IsMember({"brownian", "zero", "linear", "sine"}));
            sub->add_option("--path", p.path_file, "Read the path from a JSON file instead")->check(CLI::ExistingFile);
        }
        if (c.name == "spectrum" || c.name == "ensemble" || c.name == "forms-check") {
            sub->add_option("--k", p.k, "Eigenvalues retained / basis size")
                ->capture_default_str()
                ->check(CLI::PositiveNumber);
        }
        if (c.name == "spectrum") {
            sub->add_flag("--skip-general", p.skip_general, "Skip the nonsymmetric eigensolver cross-check");
        }
        if (c.name == "ensemble") {
            sub->add_option("--paths", p.paths, "Number of environments")
                ->capture_default_str()
                ->check(CLI::PositiveNumber);
        }
        if (c.name == "wong-zakai") {
            p.levels = "16,64,256,1024";
            sub->add_option("--levels", p.levels, "Comma-separated nested grid sizes")->capture_default_str();
        }
        subs.push_back(sub);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    std::size_t which = 0;
    while (which < subs.size() && !subs[which]->parsed()) ++which;
    const Command& cmd = cmds[which];
    if (p.out.empty()) p.out = cmd.default_out;

    json timings = json::object();
    Stopwatch sw(timings);
    Outcome outcome;
    try {
        outcome = cmd.body(p, sw);
    } catch (const ConfigurationError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const InvalidGridError& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        err << "error: " << cmd.name << " failed: " << ex.what() << '\n';
        return kExitCheckFailed;
    }

    json manifest;
    manifest["version"] = io::kFormatVersion;
    manifest["command"] = cmd.name;
    manifest["parameters"] = cmd.parameters(p);
    json outputs = json::array();
    for (const auto& f : outcome.files) outputs.push_back(f.first.string());
    manifest["outputs"] = outputs;
    manifest["conventions"] = "W(a) = 0; numbers printed with %.17g";
    manifest["results"] = outcome.results;
    manifest["passed"] = outcome.passed;
    manifest["timings"] = timings;

    try {
        for (const auto& [path, content] : outcome.files) io::write_file_atomic(path, content);
        io::write_file_atomic(fs::path(p.out + ".manifest.json"), io::dump(manifest));
    } catch (const std::exception& ex) {
        err << "error: writing outputs: " << ex.what() << '\n';
        return kExitCheckFailed;
    }

    out << cmd.name << ": " << (outcome.passed ? "ok" : "CHECK FAILED") << " -> " << p.out << '\n';
    return outcome.passed ? kExitOk : kExitCheckFailed;
}

}  // namespace wro::cli
