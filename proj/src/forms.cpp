#include "wro/forms.hpp"

#include "wro/errors.hpp"
#include "wro/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wro {

OperatorKind parse_operator_kind(const std::string& tag) {
    if (tag == "A") return OperatorKind::A;
    if (tag == "B") return OperatorKind::B;
    throw ConfigurationError("unknown operator kind '" + tag + "' (expected A or B)");
}

std::string to_string(OperatorKind kind) { return kind == OperatorKind::A ? "A" : "B"; }

namespace {

// int x y z dt (z may be empty for int x y dt)
double integrate_product(const Grid& g, std::span<const double> x, std::span<const double> y,
                         std::span<const double> z = {}) {
    std::vector<double> p(g.size());
    if (z.empty()) {
        for (std::size_t j = 0; j < p.size(); ++j) p[j] = x[j] * y[j];
    } else {
        for (std::size_t j = 0; j < p.size(); ++j) p[j] = x[j] * y[j] * z[j];
    }
    return trapz(g, p);
}

}  // namespace

double inner(const SampledFunction& f, const SampledFunction& h) {
    require_same_grid(f.grid(), h.grid(), "inner");
    return integrate_product(f.grid(), f.values(), h.values());
}

double form_A(const SampledFunction& f, const SampledFunction& h, const BrownianPath& path) {
    require_same_grid(f.grid(), h.grid(), "form_A");
    require_same_grid(f.grid(), path.grid(), "form_A");
    const auto& g = f.grid();
    const auto fp = f.d1("form_A(f)");
    const auto hp = h.d1("form_A(h)");
    return -integrate_product(g, fp, hp) + integrate_product(g, f.values(), hp, path.values());
}

double form_B(const SampledFunction& f, const SampledFunction& h, const BrownianPath& path) {
    require_same_grid(f.grid(), h.grid(), "form_B");
    require_same_grid(f.grid(), path.grid(), "form_B");
    const auto& g = f.grid();
    const auto fp = f.d1("form_B(f)");
    const auto hp = h.d1("form_B(h)");
    std::vector<double> fph(g.size());
    for (std::size_t j = 0; j < fph.size(); ++j) fph[j] = fp[j] * h[j];
    return -0.5 * integrate_product(g, fp, hp) - 0.5 * ito_sum(fph, path);
}

double form(OperatorKind kind, const SampledFunction& f, const SampledFunction& h, const BrownianPath& path) {
    return kind == OperatorKind::A ? form_A(f, h, path) : form_B(f, h, path);
}

FormSplit decompose(OperatorKind kind, const SampledFunction& f, const SampledFunction& h,
                    const BrownianPath& path) {
    require_same_grid(f.grid(), h.grid(), "decompose");
    require_same_grid(f.grid(), path.grid(), "decompose");
    const auto& g = f.grid();
    const auto w = path.values();
    const auto fp = f.d1("decompose(f)");
    const auto hp = h.d1("decompose(h)");
    const double dd = integrate_product(g, fp, hp);

    if (kind == OperatorKind::A) {
        const double q = integrate_product(g, f.values(), hp, w);  // int f h' W
        const double r = integrate_product(g, fp, h.values(), w);  // int f' h W
        return {-0.5 * dd + 0.5 * q + 0.5 * r, -0.5 * dd + 0.5 * q - 0.5 * r};
    }

    const auto fpp = f.d2("decompose(f)");
    const auto hpp = h.d2("decompose(h)");
    const double p = integrate_product(g, fpp, h.values(), w);  // int f'' h W
    const double q = integrate_product(g, f.values(), hpp, w);  // int f h'' W
    const double r = integrate_product(g, fp, hp, w);           // int f' h' W
    return {-0.25 * dd + 0.25 * p + 0.25 * q + 0.5 * r, -0.25 * dd + 0.25 * p - 0.25 * q};
}

bool FormInequalityReport::semibound_ok() const { return worst_margin_semibound >= 0.0; }
bool FormInequalityReport::coercive_ok() const { return worst_margin_coercive >= 0.0; }

namespace {

double clamp_to_floor(double margin, double tolerance) {
    // margins inside the rounding floor are reported as exactly zero
    return (margin < 0.0 && margin >= -tolerance) ? 0.0 : margin;
}

}  // namespace

FormInequalityReport inequality_report(OperatorKind kind, const BrownianPath& path, int basis_size,
                                       const InequalityOptions& options) {
    if (basis_size < 1) throw ContractError("inequality_report: basis_size must be >= 1");
    const Grid& g = path.grid();

    FormInequalityReport rep;
    rep.kind = kind;
    rep.basis_size = basis_size;
    rep.random_combinations = options.random_combinations;
    rep.M = path.max_abs();
    rep.K_poincare = g.length() / std::numbers::pi;
    const double K2 = rep.K_poincare * rep.K_poincare;
    if (kind == OperatorKind::A) {
        rep.C_lower = -(1.0 + rep.M) / 2.0;
        rep.c_coercive = std::min(0.25, 1.0 / (4.0 * K2));
    } else {
        rep.C_lower = -(0.5 + rep.M / 2.0);
        rep.c_coercive = std::min(0.125, 1.0 / (8.0 * K2));
    }
    const double eps2_factor = kind == OperatorKind::A ? 0.5 : 0.25;

    std::vector<SampledFunction> basis;
    basis.reserve(static_cast<std::size_t>(basis_size));
    for (int k = 1; k <= basis_size; ++k) basis.push_back(sine_basis(g, k));

    std::vector<SampledFunction> tested = basis;
    NormalStream normals(derive_seed(options.seed, static_cast<std::uint64_t>(basis_size), 0));
    for (int r = 0; r < options.random_combinations; ++r) {
        SampledFunction f = scale(normals.next(), basis[0]);
        for (std::size_t i = 1; i < basis.size(); ++i) f = combine(1.0, f, normals.next(), basis[i]);
        const double nrm = kind == OperatorKind::A ? h1_norm(f) : w22_norm(f);
        tested.push_back(scale(1.0 / nrm, f));
    }

    double worst_semi = std::numeric_limits<double>::infinity();
    double worst_semi_unsq = std::numeric_limits<double>::infinity();
    double worst_coer = std::numeric_limits<double>::infinity();
    double worst_poinc = std::numeric_limits<double>::infinity();
    double eps2_err = 0.0;

    for (const auto& f : tested) {
        const FormSplit split = decompose(kind, f, f, path);
        const double n1 = h1_norm(f);
        const double nsemi = kind == OperatorKind::A ? n1 : w22_norm(f);
        const double l2 = l2_norm(f);
        const double grad = l2_norm(SampledFunction(g, std::vector<double>(f.d1().begin(), f.d1().end())));

        // squared margins are normalized by ||f||^2 so basis functions of any k compare
        const double semi = (split.eps1 - rep.C_lower * nsemi * nsemi) / (nsemi * nsemi);
        worst_semi = std::min(worst_semi, clamp_to_floor(semi, options.tolerance));
        worst_semi_unsq = std::min(worst_semi_unsq, split.eps1 - rep.C_lower * nsemi);

        const double abs_eps2 = std::abs(split.eps2);
        eps2_err = std::max(eps2_err, std::abs(abs_eps2 - eps2_factor * grad * grad) / (grad * grad));
        const double coer = (abs_eps2 - rep.c_coercive * n1 * n1) / (n1 * n1);
        worst_coer = std::min(worst_coer, clamp_to_floor(coer, options.tolerance));

        const double poinc = (rep.K_poincare * grad - l2) / l2;
        worst_poinc = std::min(worst_poinc, clamp_to_floor(poinc, options.tolerance));
        ++rep.functions_checked;
    }

    rep.worst_margin_semibound = worst_semi;
    rep.worst_margin_semibound_unsquared = worst_semi_unsq;
    rep.worst_margin_coercive = worst_coer;
    rep.worst_margin_poincare = worst_poinc;
    rep.eps2_identity_error = eps2_err;
    rep.poincare_ok = worst_poinc >= 0.0;
    return rep;
}

}  // namespace wro
