#pragma once

#include "wro/green.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace wro {

/// Trapezoid weights: dt/2 at the endpoints, dt elsewhere.
std::vector<double> trapezoid_weights(const Grid& grid);

/// Nystrom matrix M_ij = G(t_i, s_j) w_j. Row i applied to node values is
/// the trapezoid rule for (Tf)(t_i).
Eigen::MatrixXd discretize(const GreenKernel& kernel);

struct SpectrumOptions {
    /// Also run the general (nonsymmetric) eigensolver on M and record the
    /// largest imaginary part. O(n^3) with a large constant; disabled in
    /// ensembles.
    bool unsymmetrized_check = true;
};

struct SpectrumReport {
    OperatorKind kind = OperatorKind::A;
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> eigenvalues;  // retained, |lambda| descending, ties by real part descending
    std::vector<std::vector<double>> eigenvectors;  // node values of M's eigenvectors, unit l2
    std::vector<double> leading_eigvec;
    double trace = 0.0;               // trace(M)
    double trace_gap = 0.0;           // |sum of all eigenvalues - trace(M)|
    double abs_eigen_sum = 0.0;       // sum of |lambda| over the full spectrum
    double tail_abs_sum = 0.0;        // sum of |lambda| beyond the retained k
    double symmetry_defect = 0.0;     // max|S - S^T| / max|S| of the symmetrized matrix
    double norm_M = 0.0;              // max absolute row sum of M
    bool max_imag_checked = false;
    double max_imag = 0.0;            // largest |Im lambda| from the nonsymmetric solver
    double perron_min_entry = 0.0;    // min entry of the sign-normalized leading eigenvector
    std::uint64_t seed = 0;
};

/// Eigenvalues of M through the similar symmetric matrix
///
///     S = D^{1/2} H D^{1/2},   M = H D,   D = diag(factor w_j / alpha_j),
///
/// where H_ij = u(max) v(min) is symmetric. Eigenvectors of M are D^{-1/2} y.
SpectrumReport eigenvalues(const Eigen::MatrixXd& M, const GreenKernel& kernel, std::size_t k,
                           const SpectrumOptions& options = {});

/// |eps_kind(e, h) - <e, h>/lambda| / (||e|| ||h||), with e lifted from node
/// values through e = T e / lambda so that it carries the analytic (Te)'/lambda.
double weak_eigen_residual(OperatorKind kind, const GreenKernel& kernel, double lambda,
                           std::span<const double> eigvec, const SampledFunction& h, const BrownianPath& path);

struct EnsembleFailure {
    std::size_t path_index = 0;
    std::string message;
};

struct EnsembleReport {
    OperatorKind kind = OperatorKind::A;
    std::size_t n = 0;
    std::size_t paths = 0;
    std::size_t k = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> leading_eigenvalue_samples;     // NaN where the path failed
    std::vector<std::vector<double>> eigenvalue_samples;  // per path, retained k
    std::vector<EnsembleFailure> failures;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n - 1)
    double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
};

struct EnsembleOptions {
    /// 0: WRO_THREADS if set, else hardware concurrency.
    unsigned threads = 0;
};

unsigned default_thread_count();

/// Path p uses seed derive_seed(master_seed, p, 0) and runs
/// sample -> solve -> kernel -> discretize -> eigenvalues.
EnsembleReport ensemble(OperatorKind kind, const Grid& grid, std::size_t paths, std::size_t k,
                        std::uint64_t master_seed, const EnsembleOptions& options = {});

/// Linear-interpolation quantile (Hyndman-Fan type 7) of sorted data.
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace wro
