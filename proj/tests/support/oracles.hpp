#pragma once

// Reference values computed independently of the library: closed forms,
// brute-force quadrature and scalar root finding.

#include "wro/green.hpp"
#include "wro/path.hpp"
#include "wro/random.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

inline double bisect(const std::function<double(double)>& g, double lo, double hi, int iters = 200) {
    double glo = g(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm < 0) == (glo < 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Kind A, W = 0 on [0,1]: G(t,s) = max(t,s)(1 - min(t,s)). Writing
// lambda = 1/mu^2 for a positive eigenvalue, e'' = e/lambda with the
// boundary relations e(0) = e'(0) + ... reduces to (1+mu)/(mu-1) = e^mu.
inline double zero_path_leading_eigenvalue_A() {
    const double mu = bisect([](double m) { return (1.0 + m) / (m - 1.0) - std::exp(m); }, 1.0 + 1e-9, 3.0);
    return 1.0 / (mu * mu);
}

// Negative eigenvalues -1/w^2 with tan w = 2w / (1 - w^2); the first lies in (pi/2, pi).
inline double zero_path_second_eigenvalue_A() {
    const double pi = std::acos(-1.0);
    const double w = bisect([](double x) { return std::sin(x) * (1 - x * x) - 2 * x * std::cos(x); }, pi / 2 + 1e-9,
                            pi - 1e-9);
    return -1.0 / (w * w);
}

inline double tf_zero_path_A(double t) { return (t * t - t + 1.0) / 2.0; }
inline double u_zero_path_B(double t) { return (1.0 - std::exp(-t / 2.0)) / (1.0 - std::exp(-0.5)); }
inline double tf0_zero_path_B() { return 8.0 * std::exp(0.5) - 12.0; }
inline double ito_formula_zero_path() { return 10.0 * std::exp(-0.5) - 6.0; }

// Literal row-by-row trapezoid quadrature of (Tf)(t_i) = sum_j w_j G(t_i, s_j) f(s_j).
inline std::vector<double> apply_by_rows(const wro::GreenKernel& k, std::span<const double> f) {
    const std::size_t N = k.grid().size();
    const double dt = k.grid().dt();
    std::vector<double> out(N, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const double w = (j == 0 || j + 1 == N) ? 0.5 * dt : dt;
            s += w * k(i, j) * f[j];
        }
        out[i] = s;
    }
    return out;
}

// Paths sampled at a coarse level and bridge-refined in place, so that one
// environment is observed at every resolution.
struct NestedPaths {
    std::vector<std::vector<wro::BrownianPath>> levels;  // levels[l][p]
};

inline NestedPaths nested_paths(std::size_t count, std::size_t n0, unsigned doublings, unsigned step,
                                std::uint64_t master) {
    NestedPaths out;
    const wro::Grid g(0.0, 1.0, n0);
    std::vector<wro::BrownianPath> current;
    for (std::size_t p = 0; p < count; ++p) current.push_back(wro::sample_brownian(g, wro::derive_seed(master, p, 0)));
    out.levels.push_back(current);
    for (unsigned d = step; d <= doublings; d += step) {
        for (auto& path : current) path = wro::refine(path, step);
        out.levels.push_back(current);
    }
    return out;
}

inline double median(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const std::size_t m = x.size() / 2;
    return x.size() % 2 ? x[m] : 0.5 * (x[m - 1] + x[m]);
}

}  // namespace oracle
