#include "wro/homogeneous.hpp"

#include "wro/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wro {

HomogeneousSolutions solve_A(const BrownianPath& path) {
    const Grid& g = path.grid();
    const std::size_t N = g.size();
    const auto w = path.values();

    const std::vector<double> wint = cumtrapz(g, w);  // int_a^t W
    const double wint_b = wint.back();

    // I(t) = e^m * Is(t), m = max(-int W) keeps the integrand in (0, 1]
    const double m = -*std::min_element(wint.begin(), wint.end());
    std::vector<double> e_neg(N);
    for (std::size_t j = 0; j < N; ++j) e_neg[j] = std::exp(-wint[j] - m);
    const std::vector<double> is = cumtrapz(g, e_neg);
    const double is_b = is.back();

    HomogeneousSolutions sol{OperatorKind::A, SampledFunction::constant(g, 0.0),
                             SampledFunction::constant(g, 0.0), {}, {}, 0.0, 0.0, {}, {}, true};
    sol.log_denom = wint_b + m + std::log(is_b);
    sol.denom = std::exp(sol.log_denom);
    const double inv_d = std::exp(-sol.log_denom);

    std::vector<double> u(N), v(N), up(N), vp(N);
    sol.E.resize(N);
    sol.I.resize(N);
    sol.alpha.resize(N);
    sol.alpha_closed.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        const double ratio = std::exp(wint[j] - wint_b);  // E(t)/E(b)
        u[j] = ratio * (is[j] / is_b);
        v[j] = ratio * ((is_b - is[j]) / is_b);
        // (W E I + 1)/D and (W E J - 1)/D
        up[j] = w[j] * u[j] + inv_d;
        vp[j] = w[j] * v[j] - inv_d;
        sol.E[j] = std::exp(wint[j]);
        sol.I[j] = std::exp(m) * is[j];
        // E(t) I(b) / D^2 = (E(t)/E(b)) / D
        sol.alpha_closed[j] = std::exp(wint[j] - wint_b - sol.log_denom);
    }
    for (std::size_t j = 0; j < N; ++j) sol.alpha[j] = up[j] * v[j] - vp[j] * u[j];

    sol.u = SampledFunction(g, std::move(u), std::move(up));
    sol.v = SampledFunction(g, std::move(v), std::move(vp));
    return sol;
}

HomogeneousSolutions solve_B(const BrownianPath& path) {
    const Grid& g = path.grid();
    const std::size_t N = g.size();

    // x = W(t) - t/2; Z = e^x = e^m * zs
    std::vector<double> x(N);
    for (std::size_t j = 0; j < N; ++j) x[j] = path[j] - 0.5 * g[j];
    const double m = *std::max_element(x.begin(), x.end());
    std::vector<double> zs(N);
    for (std::size_t j = 0; j < N; ++j) zs[j] = std::exp(x[j] - m);
    const std::vector<double> cs = cumtrapz(g, zs);
    const double ds = cs.back();

    HomogeneousSolutions sol{OperatorKind::B, SampledFunction::constant(g, 0.0),
                             SampledFunction::constant(g, 0.0), {}, {}, 0.0, 0.0, {}, {}, true};
    sol.log_denom = m + std::log(ds);
    sol.denom = std::exp(sol.log_denom);
    sol.weak_solution_expected = path.origin().kind != PathOrigin::Kind::Deterministic;

    std::vector<double> u(N), v(N), up(N), vp(N);
    sol.alpha.resize(N);
    sol.alpha_closed.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        u[j] = cs[j] / ds;
        v[j] = (ds - cs[j]) / ds;
        up[j] = zs[j] / ds;  // Z / D
        vp[j] = -up[j];
        sol.alpha_closed[j] = up[j];
    }
    for (std::size_t j = 0; j < N; ++j) sol.alpha[j] = up[j] * v[j] - vp[j] * u[j];

    sol.u = SampledFunction(g, std::move(u), std::move(up));
    sol.v = SampledFunction(g, std::move(v), std::move(vp));
    return sol;
}

HomogeneousSolutions solve(OperatorKind kind, const BrownianPath& path) {
    return kind == OperatorKind::A ? solve_A(path) : solve_B(path);
}

double homogeneous_residual(OperatorKind kind, const HomogeneousSolutions& sol, const SampledFunction& h,
                            const BrownianPath& path, WhichSolution which) {
    if (sol.kind != kind) throw ContractError("homogeneous_residual: solution was built for the other operator");
    h.d1("homogeneous_residual(h)");
    double hmax = 0.0;
    for (double x : h.values()) hmax = std::max(hmax, std::abs(x));
    const double floor = 1e-12 * std::max(hmax, 1.0);
    if (std::abs(h[0]) > floor || std::abs(h[h.size() - 1]) > floor) {
        throw ContractError("homogeneous_residual: test function must satisfy h(a) = h(b) = 0");
    }
    const SampledFunction& f = which == WhichSolution::U ? sol.u : sol.v;
    return std::abs(form(kind, f, h, path));
}

namespace {

void check_levels(std::size_t path_n, const std::vector<std::size_t>& levels) {
    if (levels.empty()) throw ConfigurationError("wong_zakai_compare: no levels given");
    for (std::size_t lv : levels) {
        if (lv == 0 || path_n % lv != 0) {
            throw ConfigurationError("wong_zakai_compare: level " + std::to_string(lv) +
                                     " is not a coarsening of the path grid (n = " + std::to_string(path_n) + ")");
        }
    }
    std::vector<std::size_t> sorted = levels;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] % sorted[i - 1] != 0) {
            throw ConfigurationError("wong_zakai_compare: levels " + std::to_string(sorted[i - 1]) + " and " +
                                     std::to_string(sorted[i]) + " are not nested");
        }
    }
}

}  // namespace

std::vector<double> polygonal_solution_at_nodes(const BrownianPath& path, std::size_t level) {
    const std::size_t stride = path.grid().n() / level;
    std::vector<double> z(level + 1);
    // per segment Z(t_{j+1}) = Z(t_j) exp(W(t_{j+1}) - W(t_j)); the exponent is
    // accumulated with compensation so the product telescopes to rounding
    CompensatedSum log_z;
    z[0] = 1.0;
    for (std::size_t j = 0; j < level; ++j) {
        log_z.add(path[(j + 1) * stride] - path[j * stride]);
        z[j + 1] = std::exp(log_z.value());
    }
    return z;
}

WongZakaiReport wong_zakai_compare(const BrownianPath& path, const std::vector<std::size_t>& levels) {
    const Grid& g = path.grid();
    check_levels(g.n(), levels);
    const double w_a = path[0];

    WongZakaiReport report;
    report.path_n = g.n();
    for (std::size_t lv : levels) {
        const std::size_t stride = g.n() / lv;
        const std::vector<double> z = polygonal_solution_at_nodes(path, lv);
        WongZakaiLevel row;
        row.n = lv;
        for (std::size_t j = 0; j <= lv; ++j) {
            const std::size_t idx = j * stride;
            const double t = g[idx];
            const double cand_s = std::exp(path[idx] - w_a);
            const double cand_i = std::exp(path[idx] - 0.5 * t);
            const double ratio = z[j] / cand_i;
            row.sup_node_dist_S = std::max(row.sup_node_dist_S, std::abs(z[j] - cand_s));
            row.sup_node_rel_dist_S = std::max(row.sup_node_rel_dist_S, std::abs(z[j] - cand_s) / cand_s);
            row.sup_node_dist_I = std::max(row.sup_node_dist_I, std::abs(z[j] - cand_i));
            row.sup_node_rel_gap_I = std::max(row.sup_node_rel_gap_I, std::abs(ratio - 1.0));
            row.ratio_identity_error =
                std::max(row.ratio_identity_error, std::abs(ratio / std::exp(0.5 * t - w_a) - 1.0));
        }
        // between level nodes: Z_n(t) = Z_n(t_j) exp(slope_j (t - t_j))
        for (std::size_t i = 0; i < g.size(); ++i) {
            const std::size_t j = std::min(i / stride, lv - 1);
            const std::size_t i0 = j * stride;
            const std::size_t i1 = i0 + stride;
            const double slope = (path[i1] - path[i0]) / (g[i1] - g[i0]);
            const double zn = z[j] * std::exp(slope * (g[i] - g[i0]));
            row.sup_fine_dist_S = std::max(row.sup_fine_dist_S, std::abs(zn - std::exp(path[i] - w_a)));
        }
        report.levels.push_back(row);
    }
    return report;
}

}  // namespace wro
