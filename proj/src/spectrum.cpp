#include "wro/spectrum.hpp"

#include "wro/errors.hpp"
#include "wro/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

namespace wro {

std::vector<double> trapezoid_weights(const Grid& grid) {
    std::vector<double> w(grid.size(), grid.dt());
    w.front() = 0.5 * grid.dt();
    w.back() = 0.5 * grid.dt();
    return w;
}

Eigen::MatrixXd discretize(const GreenKernel& kernel) {
    const std::vector<double> w = trapezoid_weights(kernel.grid());
    Eigen::MatrixXd M = kernel.matrix();
    for (Eigen::Index j = 0; j < M.cols(); ++j) M.col(j) *= w[static_cast<std::size_t>(j)];
    return M;
}

namespace {

bool spectral_order(double x, double y) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax != ay) return ax > ay;
    return x > y;
}

}  // namespace

SpectrumReport eigenvalues(const Eigen::MatrixXd& M, const GreenKernel& kernel, std::size_t k,
                           const SpectrumOptions& options) {
    const std::size_t N = kernel.grid().size();
    if (static_cast<std::size_t>(M.rows()) != N || static_cast<std::size_t>(M.cols()) != N) {
        throw DimensionError("eigenvalues: matrix does not match the kernel grid");
    }
    if (k == 0 || k > N) {
        throw ContractError("eigenvalues: k must be in [1, n+1], got " + std::to_string(k));
    }

    SpectrumReport rep;
    rep.kind = kernel.kind();
    rep.n = kernel.grid().n();
    rep.k = k;
    rep.trace = M.trace();
    rep.norm_M = M.cwiseAbs().rowwise().sum().maxCoeff();

    const std::vector<double> w = trapezoid_weights(kernel.grid());
    const auto alpha = kernel.alpha();
    Eigen::VectorXd sqrt_d(static_cast<Eigen::Index>(N));
    for (std::size_t j = 0; j < N; ++j) {
        sqrt_d[static_cast<Eigen::Index>(j)] = std::sqrt(kernel.factor() * w[j] / alpha[j]);
    }
    // S = D^{1/2} M D^{-1/2}
    Eigen::MatrixXd S = sqrt_d.asDiagonal() * M * sqrt_d.cwiseInverse().asDiagonal();
    const double s_scale = S.cwiseAbs().maxCoeff();
    rep.symmetry_defect = (S - S.transpose()).cwiseAbs().maxCoeff() / (s_scale > 0.0 ? s_scale : 1.0);
    S = 0.5 * (S + S.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
    if (solver.info() != Eigen::Success) throw Error("eigenvalues: symmetric eigensolver did not converge");
    const Eigen::VectorXd lam = solver.eigenvalues();
    const Eigen::MatrixXd Y = solver.eigenvectors();

    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return spectral_order(lam[static_cast<Eigen::Index>(x)], lam[static_cast<Eigen::Index>(y)]);
    });

    double sum = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double l = lam[static_cast<Eigen::Index>(order[i])];
        sum += l;
        rep.abs_eigen_sum += std::abs(l);
        if (i >= k) rep.tail_abs_sum += std::abs(l);
    }
    rep.trace_gap = std::abs(sum - rep.trace);

    for (std::size_t i = 0; i < k; ++i) {
        const auto col = static_cast<Eigen::Index>(order[i]);
        rep.eigenvalues.push_back(lam[col]);
        Eigen::VectorXd e = Y.col(col).cwiseQuotient(sqrt_d);
        e.normalize();
        // sign: largest-magnitude entry positive
        Eigen::Index imax = 0;
        e.cwiseAbs().maxCoeff(&imax);
        if (e[imax] < 0.0) e = -e;
        rep.eigenvectors.emplace_back(e.data(), e.data() + e.size());
    }
    rep.leading_eigvec = rep.eigenvectors.front();
    rep.perron_min_entry = *std::min_element(rep.leading_eigvec.begin(), rep.leading_eigvec.end());

    if (options.unsymmetrized_check) {
        Eigen::EigenSolver<Eigen::MatrixXd> general(M, /*computeEigenvectors=*/false);
        if (general.info() != Eigen::Success) throw Error("eigenvalues: general eigensolver did not converge");
        rep.max_imag = general.eigenvalues().imag().cwiseAbs().maxCoeff();
        rep.max_imag_checked = true;
    }
    return rep;
}

double weak_eigen_residual(OperatorKind kind, const GreenKernel& kernel, double lambda,
                           std::span<const double> eigvec, const SampledFunction& h, const BrownianPath& path) {
    const Grid& g = kernel.grid();
    if (eigvec.size() != g.size()) throw DimensionError("weak_eigen_residual: eigenvector length mismatch");
    if (std::all_of(eigvec.begin(), eigvec.end(), [](double x) { return x == 0.0; })) {
        throw ContractError("weak_eigen_residual: zero eigenvector");
    }
    // max row sum of M = max_i (T 1)(t_i) because G >= 0
    const SampledFunction t_one = apply(kernel, SampledFunction::constant(g, 1.0));
    const double norm_m = *std::max_element(t_one.values().begin(), t_one.values().end());
    if (!(std::abs(lambda) >= 1e-12 * norm_m)) {
        throw DegenerateEigenvalueError("weak_eigen_residual: |lambda| below 1e-12 ||M||");
    }

    const SampledFunction e(g, std::vector<double>(eigvec.begin(), eigvec.end()));
    const SampledFunction lifted = scale(1.0 / lambda, apply(kernel, e));
    const double num = std::abs(form(kind, lifted, h, path) - inner(lifted, h) / lambda);
    return num / (l2_norm(lifted) * l2_norm(h));
}

unsigned default_thread_count() {
    if (const char* env = std::getenv("WRO_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

EnsembleReport ensemble(OperatorKind kind, const Grid& grid, std::size_t paths, std::size_t k,
                        std::uint64_t master_seed, const EnsembleOptions& options) {
    if (paths == 0) throw ContractError("ensemble: paths must be >= 1");
    if (k == 0 || k > grid.size()) throw ContractError("ensemble: k must be in [1, n+1]");

    EnsembleReport rep;
    rep.kind = kind;
    rep.n = grid.n();
    rep.paths = paths;
    rep.k = k;
    rep.master_seed = master_seed;
    rep.seeds.resize(paths);
    rep.leading_eigenvalue_samples.assign(paths, std::numeric_limits<double>::quiet_NaN());
    rep.eigenvalue_samples.assign(paths, {});
    std::vector<std::string> errors(paths);

    for (std::size_t p = 0; p < paths; ++p) rep.seeds[p] = derive_seed(master_seed, p, 0);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t p = next++; p < paths; p = next++) {
            try {
                const BrownianPath path = sample_brownian(grid, rep.seeds[p]);
                const GreenKernel gk = kernel(kind, solve(kind, path));
                const SpectrumReport sr = eigenvalues(discretize(gk), gk, k, SpectrumOptions{false});
                rep.eigenvalue_samples[p] = sr.eigenvalues;
                rep.leading_eigenvalue_samples[p] = sr.eigenvalues.front();
            } catch (const std::exception& ex) {
                errors[p] = ex.what();
            }
        }
    };

    const unsigned threads = std::min<std::size_t>(options.threads ? options.threads : default_thread_count(),
                                                   paths);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<double> ok;
    for (std::size_t p = 0; p < paths; ++p) {
        if (!errors[p].empty()) {
            rep.failures.push_back({p, errors[p]});
        } else {
            ok.push_back(rep.leading_eigenvalue_samples[p]);
        }
    }
    if (!ok.empty()) {
        // in path-index order, so the sums do not depend on scheduling
        double s = 0.0;
        for (double x : ok) s += x;
        rep.mean = s / static_cast<double>(ok.size());
        double ss = 0.0;
        for (double x : ok) ss += (x - rep.mean) * (x - rep.mean);
        rep.stddev = ok.size() > 1 ? std::sqrt(ss / static_cast<double>(ok.size() - 1)) : 0.0;
        std::sort(ok.begin(), ok.end());
        rep.q05 = quantile_sorted(ok, 0.05);
        rep.q25 = quantile_sorted(ok, 0.25);
        rep.q50 = quantile_sorted(ok, 0.50);
        rep.q75 = quantile_sorted(ok, 0.75);
        rep.q95 = quantile_sorted(ok, 0.95);
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rep.mean = rep.stddev = rep.q05 = rep.q25 = rep.q50 = rep.q75 = rep.q95 = nan;
    }
    return rep;
}

}  // namespace wro
