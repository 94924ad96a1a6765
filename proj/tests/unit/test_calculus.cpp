#include "oracles.hpp"

#include "wro/calculus.hpp"
#include "wro/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace wro;
using std::numbers::pi;

namespace {

SampledFunction identity(const Grid& g) {
    return SampledFunction::from(g, [](double t) { return t; }, [](double) { return 1.0; });
}

}  // namespace

TEST(Trapz, ExactOnLinear) {
    const Grid g(0, 1, 37);
    EXPECT_DOUBLE_EQ(trapz(SampledFunction::constant(g, 1.0)), 1.0);
    EXPECT_NEAR(trapz(identity(g)), 0.5, 1e-15);
}

TEST(Trapz, SecondOrderRatio) {
    auto err = [](std::size_t n) {
        const Grid g(0, 1, n);
        return std::abs(trapz(SampledFunction::from(g, [](double t) { return std::sin(pi * t); })) - 2 / pi);
    };
    for (std::size_t n : {16u, 64u, 256u}) {
        const double ratio = err(n) / err(2 * n);
        EXPECT_NEAR(ratio, 4.0, 0.8) << n;
    }
}

TEST(Cumtrapz, NodesAndConsistency) {
    const Grid g(0, 1, 20);
    const SampledFunction c1 = cumtrapz(SampledFunction::constant(g, 1.0));
    const SampledFunction ct = cumtrapz(identity(g));
    EXPECT_EQ(c1[0], 0.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        EXPECT_NEAR(c1[j], g[j], 1e-15);
        EXPECT_NEAR(ct[j], g[j] * g[j] / 2, 1e-15);
    }
    const SampledFunction f = SampledFunction::from(g, [](double t) { return std::exp(t); });
    EXPECT_NEAR(cumtrapz(f)[g.n()], trapz(f), 1e-15);
    EXPECT_TRUE(cumtrapz(f).has_d1());
}

TEST(ItoSum, TelescopesAndSummationByParts) {
    const BrownianPath p = sample_brownian(Grid(0, 1, 500), 3);
    const SampledFunction one = SampledFunction::constant(p.grid(), 1.0);
    const SampledFunction W = SampledFunction::of_path(p);
    const double wb = p[500];
    EXPECT_NEAR(ito_sum(one, p), wb, 1e-13);
    EXPECT_NEAR(stratonovich_sum(one, p), wb, 1e-13);
    const double qv = quadratic_variation(p);
    EXPECT_NEAR(ito_sum(W, p), 0.5 * wb * wb - 0.5 * qv, 1e-12);
    EXPECT_NEAR(stratonovich_sum(W, p), 0.5 * wb * wb, 1e-12);
    EXPECT_NEAR(stratonovich_sum(W, p) - ito_sum(W, p), 0.5 * qv, 1e-12);
}

TEST(ItoSum, Bilinearity) {
    const BrownianPath p = sample_brownian(Grid(0, 1, 300), 4);
    const SampledFunction f = sine_basis(p.grid(), 2), g = sine_basis(p.grid(), 5);
    const double lhs = ito_sum(combine(2.5, f, -1.5, g), p);
    const double rhs = 2.5 * ito_sum(f, p) - 1.5 * ito_sum(g, p);
    EXPECT_NEAR(lhs, rhs, 1e-12 * (std::abs(lhs) + 1));
    const double slhs = stratonovich_sum(combine(2.5, f, -1.5, g), p);
    EXPECT_NEAR(slhs, 2.5 * stratonovich_sum(f, p) - 1.5 * stratonovich_sum(g, p), 1e-12 * (std::abs(slhs) + 1));
}

TEST(ItoSum, MartingaleMean) {
    const int N = 1000;
    double s = 0, s2 = 0;
    for (int i = 0; i < N; ++i) {
        const BrownianPath p = sample_brownian(Grid(0, 1, 128), derive_seed(21, i, 0));
        const double x = ito_sum(sine_basis(p.grid(), 1), p);
        s += x;
        s2 += x * x;
    }
    // Var = int h1^2 = 1/2; 4 standard errors
    EXPECT_NEAR(s / N, 0.0, 4 * std::sqrt(0.5 / N));
    EXPECT_NEAR(s2 / N, 0.5, 0.1);
}

TEST(ItoSum, GridMismatch) {
    const BrownianPath p = sample_brownian(Grid(0, 1, 10), 1);
    EXPECT_THROW(ito_sum(SampledFunction::constant(Grid(0, 1, 11), 1.0), p), DimensionError);
    EXPECT_THROW(stratonovich_sum(SampledFunction::constant(Grid(0, 2, 10), 1.0), p), DimensionError);
}

TEST(Norms, AnalyticValues) {
    const Grid g(0, 1, 4096);
    const SampledFunction zero = SampledFunction::constant(g, 0.0);
    EXPECT_EQ(h1_norm(zero), 0.0);
    EXPECT_EQ(w22_norm(zero), 0.0);
    const SampledFunction h1 = sine_basis(g, 1);
    EXPECT_NEAR(h1_norm(h1), 2.331266, 1e-6);
    EXPECT_NEAR(w22_norm(h1), std::sqrt((1 + pi * pi + pi * pi * pi * pi) / 2), 1e-7);
    EXPECT_NEAR(w22_norm(h1), 7.35793, 2e-5);
    const SampledFunction q = SampledFunction::from(
        g, [](double t) { return t * (1 - t); }, [](double t) { return 1 - 2 * t; }, [](double) { return -2.0; });
    EXPECT_NEAR(h1_norm(q), std::sqrt(11.0 / 30.0), 1e-7);
    EXPECT_GE(w22_norm(q), h1_norm(q));
    EXPECT_THROW(h1_norm(SampledFunction(g, std::vector<double>(g.size(), 1.0))), ContractError);
    EXPECT_THROW(w22_norm(identity(g)), ContractError);
}

TEST(SineBasis, BoundaryOrthogonalityDerivative) {
    const Grid g(0.5, 2.5, 4096);
    for (int j = 1; j <= 4; ++j) {
        const SampledFunction hj = sine_basis(g, j);
        EXPECT_EQ(hj[0], 0.0);
        EXPECT_EQ(hj[g.n()], 0.0);
        EXPECT_NEAR(hj.d1()[0], j * pi / 2.0, 1e-12);
        for (int k = 1; k <= 4; ++k) {
            const double ip = trapz(g, multiply(hj, sine_basis(g, k)).values());
            EXPECT_NEAR(ip, j == k ? 1.0 : 0.0, 1e-3);
        }
    }
    EXPECT_THROW(sine_basis(g, 0), ContractError);
}

TEST(ItoFormula, ZeroFunctionAndZeroPath) {
    const Grid g(0, 1, 4096);
    const BrownianPath p = sample_brownian(g, 9);
    EXPECT_EQ(ito_formula_residual(p, SampledFunction::constant(g, 0.0)), 0.0);
    const SampledFunction q = SampledFunction::from(
        g, [](double t) { return t * (1 - t); }, [](double t) { return 1 - 2 * t; });
    const double z = ito_formula_residual(deterministic_path("zero", g), q);
    EXPECT_NEAR(z, oracle::ito_formula_zero_path(), 1e-7);
    EXPECT_NEAR(z, 0.065305, 1e-5);
}

TEST(ItoFormula, DecreasesAcrossThreeLevels) {
    const auto nested = oracle::nested_paths(100, 256, 4, 2, 77);
    std::vector<double> med;
    for (const auto& level : nested.levels) {
        std::vector<double> r;
        for (const auto& p : level) {
            const Grid& g = p.grid();
            r.push_back(ito_formula_residual(p, SampledFunction::from(
                                                    g, [](double t) { return t * (1 - t); },
                                                    [](double t) { return 1 - 2 * t; })));
        }
        med.push_back(oracle::median(r));
    }
    EXPECT_GT(med[0], med[1]);
    EXPECT_GT(med[1], med[2]);
}

TEST(CompensatedSum, RecoversLostBits) {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    s.add(-1.0);
    EXPECT_NEAR(s.value(), 1e-13, 1e-20);
}
