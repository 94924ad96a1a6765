#include "wro/io.hpp"

#include "wro/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace wro::io {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void emit(std::ostringstream& os, const json& v, int indent, int depth) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (v.type()) {
        case json::value_t::object: {
            if (v.empty()) {
                os << "{}";
                return;
            }
            os << '{' << nl;
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) os << ',' << nl;
                first = false;
                os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
                emit(os, it.value(), indent, depth + 1);
            }
            os << nl << close_pad << '}';
            return;
        }
        case json::value_t::array: {
            if (v.empty()) {
                os << "[]";
                return;
            }
            // numeric arrays stay on one line
            const bool flat = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
            os << '[';
            bool first = true;
            for (const auto& e : v) {
                if (!first) os << (flat ? ", " : ",");
                if (!flat) os << nl << pad;
                first = false;
                emit(os, e, indent, depth + 1);
            }
            if (!flat) os << nl << close_pad;
            os << ']';
            return;
        }
        case json::value_t::number_float: {
            const double x = v.get<double>();
            os << (std::isfinite(x) ? format_double(x) : "null");
            return;
        }
        default:
            os << v.dump();
            return;
    }
}

}  // namespace

std::string dump(const json& value, int indent) {
    std::ostringstream os;
    emit(os, value, indent, 0);
    os << '\n';
    return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    fs::create_directories(dir);
    const fs::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw Error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigurationError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json to_json(const BrownianPath& path) {
    json j;
    j["version"] = kFormatVersion;
    j["a"] = path.grid().a();
    j["b"] = path.grid().b();
    j["n"] = path.grid().n();
    j["seed"] = path.seed();
    j["origin"] = path.origin().tag();
    j["values"] = json(std::vector<double>(path.values().begin(), path.values().end()));
    return j;
}

BrownianPath path_from_json(const json& j) {
    try {
        Grid grid(j.at("a").get<double>(), j.at("b").get<double>(), j.at("n").get<std::size_t>());
        auto values = j.at("values").get<std::vector<double>>();
        return BrownianPath(grid, std::move(values), j.at("seed").get<std::uint64_t>(),
                            PathOrigin::parse(j.at("origin").get<std::string>()));
    } catch (const json::exception& ex) {
        throw ConfigurationError(std::string("malformed path JSON: ") + ex.what());
    }
}

BrownianPath load_path(const std::filesystem::path& file) {
    json j;
    try {
        j = json::parse(read_file(file));
    } catch (const json::parse_error& ex) {
        throw ConfigurationError("cannot parse " + file.string() + ": " + ex.what());
    }
    return path_from_json(j);
}

json to_json(const FormInequalityReport& r) {
    json j;
    j["kind"] = to_string(r.kind);
    j["M"] = r.M;
    j["C_lower"] = r.C_lower;
    j["c_coercive"] = r.c_coercive;
    j["K_poincare"] = r.K_poincare;
    j["basis_size"] = r.basis_size;
    j["random_combinations"] = r.random_combinations;
    j["functions_checked"] = r.functions_checked;
    j["worst_margin_semibound"] = r.worst_margin_semibound;
    j["worst_margin_semibound_unsquared"] = r.worst_margin_semibound_unsquared;
    j["worst_margin_coercive"] = r.worst_margin_coercive;
    j["worst_margin_poincare"] = r.worst_margin_poincare;
    j["eps2_identity_error"] = r.eps2_identity_error;
    j["semibound_ok"] = r.semibound_ok();
    j["coercive_ok"] = r.coercive_ok();
    j["poincare_ok"] = r.poincare_ok;
    return j;
}

json to_json(const SpectrumReport& r) {
    json j;
    j["kind"] = to_string(r.kind);
    j["n"] = r.n;
    j["k"] = r.k;
    j["seed"] = r.seed;
    j["eigenvalues"] = json(r.eigenvalues);
    j["trace"] = r.trace;
    j["trace_gap"] = r.trace_gap;
    j["abs_eigen_sum"] = r.abs_eigen_sum;
    j["tail_abs_sum"] = r.tail_abs_sum;
    j["symmetry_defect"] = r.symmetry_defect;
    j["norm_M"] = r.norm_M;
    j["max_imag_checked"] = r.max_imag_checked;
    j["max_imag"] = r.max_imag;
    j["perron_min_entry"] = r.perron_min_entry;
    j["leading_eigvec"] = json(r.leading_eigvec);
    return j;
}

json to_json(const EnsembleReport& r) {
    json j;
    j["kind"] = to_string(r.kind);
    j["n"] = r.n;
    j["paths"] = r.paths;
    j["k"] = r.k;
    j["master_seed"] = r.master_seed;
    j["mean"] = r.mean;
    j["stddev"] = r.stddev;
    j["quantiles"] = {{"5", r.q05}, {"25", r.q25}, {"50", r.q50}, {"75", r.q75}, {"95", r.q95}};
    j["leading_eigenvalue_samples"] = json(r.leading_eigenvalue_samples);
    json failures = json::array();
    for (const auto& f : r.failures) failures.push_back({{"path_index", f.path_index}, {"message", f.message}});
    j["failures"] = failures;
    return j;
}

json to_json(const WongZakaiReport& r) {
    json j;
    j["path_n"] = r.path_n;
    json levels = json::array();
    for (const auto& l : r.levels) {
        levels.push_back({{"n", l.n},
                          {"sup_node_dist_S", l.sup_node_dist_S},
                          {"sup_node_rel_dist_S", l.sup_node_rel_dist_S},
                          {"sup_node_dist_I", l.sup_node_dist_I},
                          {"sup_node_rel_gap_I", l.sup_node_rel_gap_I},
                          {"ratio_identity_error", l.ratio_identity_error},
                          {"sup_fine_dist_S", l.sup_fine_dist_S}});
    }
    j["levels"] = levels;
    return j;
}

json kernel_summary(const GreenKernel& k) {
    json j;
    j["kind"] = to_string(k.kind());
    j["factor"] = k.factor();
    j["n"] = k.grid().n();
    j["min_alpha"] = k.min_alpha();
    j["diag_continuity_error"] = k.diag_continuity_error();
    return j;
}

std::string function_csv(const SampledFunction& f) {
    std::ostringstream os;
    os << "t,value,d1,d2\n";
    for (std::size_t j = 0; j < f.size(); ++j) {
        os << format_double(f.grid()[j]) << ',' << format_double(f[j]) << ',';
        if (f.has_d1()) os << format_double(f.d1()[j]);
        os << ',';
        if (f.has_d2()) os << format_double(f.d2()[j]);
        os << '\n';
    }
    return os.str();
}

std::string homogeneous_csv(const HomogeneousSolutions& sol) {
    std::ostringstream os;
    os << "t,u,v,u_prime,v_prime,alpha\n";
    const auto up = sol.u.d1();
    const auto vp = sol.v.d1();
    for (std::size_t j = 0; j < sol.u.size(); ++j) {
        os << format_double(sol.grid()[j]) << ',' << format_double(sol.u[j]) << ',' << format_double(sol.v[j])
           << ',' << format_double(up[j]) << ',' << format_double(vp[j]) << ',' << format_double(sol.alpha[j])
           << '\n';
    }
    return os.str();
}

std::string kernel_csv(const GreenKernel& k) {
    std::ostringstream os;
    const Grid& g = k.grid();
    os << "t\\s";
    for (std::size_t j = 0; j < g.size(); ++j) os << ',' << format_double(g[j]);
    os << '\n';
    for (std::size_t i = 0; i < g.size(); ++i) {
        os << format_double(g[i]);
        for (std::size_t j = 0; j < g.size(); ++j) os << ',' << format_double(k(i, j));
        os << '\n';
    }
    return os.str();
}

std::string spectrum_csv(const SpectrumReport& r) {
    std::ostringstream os;
    os << "index,lambda,abs_lambda\n";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        os << i + 1 << ',' << format_double(r.eigenvalues[i]) << ',' << format_double(std::abs(r.eigenvalues[i]))
           << '\n';
    }
    return os.str();
}

std::string ensemble_csv(const EnsembleReport& r) {
    std::ostringstream os;
    os << "path_index,seed";
    for (std::size_t i = 1; i <= r.k; ++i) os << ",lambda_" << i;
    os << '\n';
    for (std::size_t p = 0; p < r.paths; ++p) {
        os << p << ',' << r.seeds[p];
        for (std::size_t i = 0; i < r.k; ++i) {
            os << ',';
            if (i < r.eigenvalue_samples[p].size()) os << format_double(r.eigenvalue_samples[p][i]);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace wro::io
