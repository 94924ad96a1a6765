#include "wro/green.hpp"

#include "wro/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wro {

GreenKernel::GreenKernel(OperatorKind kind, HomogeneousSolutions sol)
    : kind_(kind), sol_(std::move(sol)), factor_(kind == OperatorKind::A ? 1.0 : 2.0) {
    if (sol_.kind != kind) {
        throw ContractError("kernel: homogeneous solutions were built for operator " + to_string(sol_.kind) +
                            ", not " + to_string(kind));
    }
}

double GreenKernel::operator()(std::size_t i, std::size_t j) const {
    const std::size_t hi = std::max(i, j);
    const std::size_t lo = std::min(i, j);
    return factor_ * sol_.u[hi] * sol_.v[lo] / sol_.alpha_closed[j];
}

std::pair<double, double> GreenKernel::branches(std::size_t i, std::size_t j) const {
    const double a = sol_.alpha_closed[j];
    return {factor_ * sol_.u[i] * sol_.v[j] / a, factor_ * sol_.u[j] * sol_.v[i] / a};
}

Eigen::MatrixXd GreenKernel::matrix() const {
    const auto N = static_cast<Eigen::Index>(grid().size());
    Eigen::MatrixXd G(N, N);
    for (Eigen::Index j = 0; j < N; ++j) {
        for (Eigen::Index i = 0; i < N; ++i) {
            G(i, j) = (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return G;
}

double GreenKernel::min_alpha() const {
    return *std::min_element(sol_.alpha_closed.begin(), sol_.alpha_closed.end());
}

double GreenKernel::diag_continuity_error() const {
    double err = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < grid().size(); ++i) {
        const auto [lower, upper] = branches(i, i);
        err = std::max(err, std::abs(lower - upper));
        scale = std::max(scale, std::abs(lower));
    }
    return scale > 0.0 ? err / scale : err;
}

GreenKernel kernel(OperatorKind kind, HomogeneousSolutions sol) { return GreenKernel(kind, std::move(sol)); }

SampledFunction apply(const GreenKernel& kernel, const SampledFunction& f) {
    require_same_grid(kernel.grid(), f.grid(), "apply");
    const Grid& g = f.grid();
    const std::size_t N = g.size();
    const auto& sol = kernel.solutions();
    const auto alpha = kernel.alpha();
    const auto up = sol.u.d1();
    const auto vp = sol.v.d1();

    std::vector<double> vf(N), uf(N);
    for (std::size_t j = 0; j < N; ++j) {
        vf[j] = sol.v[j] * f[j] / alpha[j];
        uf[j] = sol.u[j] * f[j] / alpha[j];
    }
    const std::vector<double> lower = cumtrapz(g, vf);  // int_a^t v f / alpha
    const std::vector<double> upper = cumtrapz(g, uf);
    const double upper_total = upper.back();

    const double c = kernel.factor();
    std::vector<double> tf(N), dtf(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double tail = upper_total - upper[i];  // int_t^b u f / alpha
        tf[i] = c * (sol.u[i] * lower[i] + sol.v[i] * tail);
        dtf[i] = c * (up[i] * lower[i] + vp[i] * tail);
    }
    return SampledFunction(g, std::move(tf), std::move(dtf));
}

double inverse_residual(OperatorKind kind, const GreenKernel& kernel, const SampledFunction& f,
                        const SampledFunction& h, const BrownianPath& path) {
    if (kernel.kind() != kind) throw ContractError("inverse_residual: kernel was built for the other operator");
    h.d1("inverse_residual(h)");
    double hmax = 0.0;
    for (double x : h.values()) hmax = std::max(hmax, std::abs(x));
    const double floor = 1e-12 * std::max(hmax, 1.0);
    if (std::abs(h[0]) > floor || std::abs(h[h.size() - 1]) > floor) {
        throw ContractError("inverse_residual: test function must satisfy h(a) = h(b) = 0");
    }
    const SampledFunction tf = apply(kernel, f);
    return std::abs(form(kind, tf, h, path) - inner(f, h));
}

}  // namespace wro
