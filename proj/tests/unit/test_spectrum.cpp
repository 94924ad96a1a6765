#include "oracles.hpp"
#include "recorded.hpp"

#include "wro/errors.hpp"
#include "wro/spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace wro;

TEST(Discretize, WeightsRowActionTrace) {
    const Grid g(0, 2, 100);
    const std::vector<double> w = trapezoid_weights(g);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 2.0, 1e-14);

    const BrownianPath p = sample_brownian(g, 3);
    const GreenKernel k = kernel(OperatorKind::A, solve_A(p));
    const Eigen::MatrixXd M = discretize(k);
    const Eigen::VectorXd ones = M * Eigen::VectorXd::Ones(M.cols());
    const SampledFunction t1 = apply(k, SampledFunction::constant(g, 1.0));
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(ones[static_cast<Eigen::Index>(i)], t1[i], 1e-13);

    std::vector<double> diag(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) diag[i] = k(i, i);
    EXPECT_NEAR(M.trace(), trapz(g, diag), 1e-12 * std::abs(M.trace()));
}

TEST(Eigenvalues, ZeroPathOracle) {
    const double ref = oracle::zero_path_leading_eigenvalue_A();
    EXPECT_NEAR(ref, 0.4198, 1e-4);
    double lead[2];
    int i = 0;
    for (std::size_t n : {200u, 400u}) {
        const GreenKernel k = kernel(OperatorKind::A, solve_A(deterministic_path("zero", Grid(0, 1, n))));
        const SpectrumReport r = eigenvalues(discretize(k), k, 3);
        EXPECT_NEAR(r.eigenvalues[0], ref, 1e-4 * ref);
        EXPECT_NEAR(r.eigenvalues[1], oracle::zero_path_second_eigenvalue_A(), 1e-3);
        lead[i++] = r.eigenvalues[0];
    }
    EXPECT_LE(std::abs(lead[0] - lead[1]) / lead[1], 1e-3);
}

TEST(Eigenvalues, ReportInvariants) {
    for (OperatorKind kind : {OperatorKind::A, OperatorKind::B}) {
        const BrownianPath p = sample_brownian(Grid(0, 1, 150), 9);
        const GreenKernel k = kernel(kind, solve(kind, p));
        const Eigen::MatrixXd M = discretize(k);
        const SpectrumReport r = eigenvalues(M, k, 151);
        EXPECT_EQ(r.eigenvalues.size(), 151u);
        for (std::size_t j = 0; j + 1 < r.eigenvalues.size(); ++j) {
            EXPECT_GE(std::abs(r.eigenvalues[j]), std::abs(r.eigenvalues[j + 1]));
        }
        EXPECT_LE(r.symmetry_defect, 1e-12);
        EXPECT_TRUE(r.max_imag_checked);
        EXPECT_LE(r.max_imag, 1e-8 * r.norm_M);
        EXPECT_LE(r.trace_gap, 1e-8 * r.abs_eigen_sum);
        EXPECT_GT(r.eigenvalues[0], 0.0);
        EXPECT_GE(r.perron_min_entry, -1e-8);
        EXPECT_EQ(r.tail_abs_sum, 0.0);

        // eigenpairs of M itself
        for (std::size_t j = 0; j < 3; ++j) {
            const Eigen::Map<const Eigen::VectorXd> e(r.eigenvectors[j].data(), 151);
            EXPECT_NEAR(e.norm(), 1.0, 1e-12);
            EXPECT_LE((M * e - r.eigenvalues[j] * e).norm(), 1e-10 * r.norm_M);
        }
    }
}

TEST(Eigenvalues, KOutOfRange) {
    const GreenKernel k = kernel(OperatorKind::A, solve_A(deterministic_path("zero", Grid(0, 1, 10))));
    const Eigen::MatrixXd M = discretize(k);
    EXPECT_THROW(eigenvalues(M, k, 0), ContractError);
    EXPECT_THROW(eigenvalues(M, k, 12), ContractError);
    EXPECT_NO_THROW(eigenvalues(M, k, 11));
}

TEST(Eigenvalues, TailBeyondFiftyIsSmall) {
    // measured against sum |lambda|: the signed trace cancels against the
    // negative eigenvalues and is not a fair scale (the tail is ~1.2% of it)
    for (OperatorKind kind : {OperatorKind::A, OperatorKind::B}) {
        for (const char* name : {"zero", "sine", "brownian"}) {
            const Grid g(0, 1, 512);
            const BrownianPath p = std::string(name) == "brownian" ? sample_brownian(g, 5) : deterministic_path(name, g);
            const GreenKernel k = kernel(kind, solve(kind, p));
            const SpectrumReport r = eigenvalues(discretize(k), k, 50, SpectrumOptions{false});
            EXPECT_LE(r.tail_abs_sum, 0.01 * r.abs_eigen_sum) << name;
        }
    }
}

TEST(Eigenvalues, GridStabilityOnRefinedBrownianPath) {
    for (OperatorKind kind : {OperatorKind::A, OperatorKind::B}) {
        const BrownianPath p = sample_brownian(Grid(0, 1, 200), 33);
        double lead[2];
        int i = 0;
        for (const BrownianPath& q : {p, refine(p)}) {
            const GreenKernel k = kernel(kind, solve(kind, q));
            lead[i++] = eigenvalues(discretize(k), k, 1, SpectrumOptions{false}).eigenvalues[0];
        }
        EXPECT_LE(std::abs(lead[0] - lead[1]) / lead[1], 1e-3);
    }
}

TEST(WeakEigenResidual, SmoothPathScalingAndErrors) {
    const BrownianPath p = deterministic_path("sine", Grid(0, 1, 400));
    const GreenKernel k = kernel(OperatorKind::A, solve_A(p));
    const SpectrumReport r = eigenvalues(discretize(k), k, 2, SpectrumOptions{false});
    const SampledFunction h = sine_basis(p.grid(), 1);
    const double base = weak_eigen_residual(OperatorKind::A, k, r.eigenvalues[0], r.leading_eigvec, h, p);
    EXPECT_LE(base, 1e-3);
    std::vector<double> scaled(r.leading_eigvec);
    for (double& x : scaled) x *= -7.5;
    EXPECT_NEAR(weak_eigen_residual(OperatorKind::A, k, r.eigenvalues[0], scaled, h, p), base, 1e-12 + 1e-9 * base);

    const std::vector<double> zero(p.grid().size(), 0.0);
    EXPECT_THROW(weak_eigen_residual(OperatorKind::A, k, r.eigenvalues[0], zero, h, p), ContractError);
    EXPECT_THROW(weak_eigen_residual(OperatorKind::A, k, 0.0, r.leading_eigvec, h, p), DegenerateEigenvalueError);
}

TEST(Ensemble, DeterministicAndThreadIndependent) {
    const Grid g(0, 1, 64);
    const EnsembleReport a = ensemble(OperatorKind::B, g, 12, 4, 99, EnsembleOptions{1});
    const EnsembleReport b = ensemble(OperatorKind::B, g, 12, 4, 99, EnsembleOptions{3});
    EXPECT_EQ(a.leading_eigenvalue_samples, b.leading_eigenvalue_samples);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.q50, b.q50);
    EXPECT_EQ(a.seeds[5], derive_seed(99, 5, 0));
    EXPECT_TRUE(a.failures.empty());
    EXPECT_EQ(a.leading_eigenvalue_samples.size(), 12u);

    // statistics recomputable from the samples
    std::vector<double> s = a.leading_eigenvalue_samples;
    EXPECT_NEAR(a.mean, std::accumulate(s.begin(), s.end(), 0.0) / 12, 1e-15);
    std::sort(s.begin(), s.end());
    EXPECT_EQ(a.q50, quantile_sorted(s, 0.5));
    EXPECT_LE(a.q05, a.q25);
    EXPECT_LE(a.q75, a.q95);
}

TEST(Ensemble, SinglePath) {
    const EnsembleReport r = ensemble(OperatorKind::A, Grid(0, 1, 32), 1, 2, 5);
    EXPECT_EQ(r.mean, r.leading_eigenvalue_samples[0]);
    EXPECT_EQ(r.stddev, 0.0);
    EXPECT_THROW(ensemble(OperatorKind::A, Grid(0, 1, 32), 0, 2, 5), ContractError);
}

TEST(Ensemble, KindBBaseline) {
    // kind B, [0,1], n = 512, 200 environments, master seed 20240601
    const EnsembleReport r = ensemble(OperatorKind::B, Grid(0, 1, 512), 200, 5, 20240601);
    EXPECT_TRUE(r.failures.empty());
    EXPECT_GT(r.q95 - r.q05, 0.0);
    EXPECT_NEAR(r.mean, recorded::kEnsembleBMean, 1e-9 * recorded::kEnsembleBMean);
    EXPECT_NEAR(r.q50, recorded::kEnsembleBMedian, 1e-9 * recorded::kEnsembleBMedian);
    EXPECT_NEAR(r.stddev, recorded::kEnsembleBStddev, 1e-7 * recorded::kEnsembleBStddev);
}

TEST(Quantile, Type7) {
    const std::vector<double> x = {1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(quantile_sorted(x, 0.0), 1);
    EXPECT_DOUBLE_EQ(quantile_sorted(x, 1.0), 4);
    EXPECT_DOUBLE_EQ(quantile_sorted(x, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(quantile_sorted(x, 0.25), 1.75);
}
