#include "oracles.hpp"

#include "wro/errors.hpp"
#include "wro/homogeneous.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace wro;

namespace {

const Grid kGrid(0, 1, 4096);

void expect_boundary(const HomogeneousSolutions& s) {
    const std::size_t n = s.u.size() - 1;
    EXPECT_NEAR(s.u[0], 0.0, 1e-12);
    EXPECT_NEAR(s.u[n], 1.0, 1e-12);
    EXPECT_NEAR(s.v[n], 0.0, 1e-12);
}

}  // namespace

TEST(SolveA, ZeroPathClosedForm) {
    const HomogeneousSolutions s = solve_A(deterministic_path("zero", kGrid));
    expect_boundary(s);
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        EXPECT_NEAR(s.u[j], kGrid[j], 1e-12);
        EXPECT_NEAR(s.v[j], 1 - kGrid[j], 1e-12);
        EXPECT_NEAR(s.alpha[j], 1.0, 1e-12);
    }
}

TEST(SolveA, VAtLeftEndpointFollowsTheFormula) {
    // v(a) = E(a) J(a) / D = I(b) / (E(b) I(b)) = exp(-int W)
    const BrownianPath p = sample_brownian(kGrid, 44);
    const HomogeneousSolutions s = solve_A(p);
    EXPECT_NEAR(s.v[0], 1.0 / s.E.back(), 1e-12);
    EXPECT_NEAR(solve_A(deterministic_path("sine", kGrid)).v[0], 1.0, 1e-12);
}

TEST(SolveA, IdentitiesOnBrownianPaths) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const BrownianPath p = sample_brownian(kGrid, seed);
        const HomogeneousSolutions s = solve_A(p);
        expect_boundary(s);
        EXPECT_GT(s.denom, 0.0);
        const auto up = s.u.d1();
        for (std::size_t j = 0; j < kGrid.size(); ++j) {
            EXPECT_GE(s.u[j], 0.0);
            EXPECT_GE(s.v[j], 0.0);
            EXPECT_GT(s.alpha_closed[j], 0.0);
            const double closed = s.E[j] * s.I.back() / (s.denom * s.denom);
            EXPECT_NEAR(s.alpha[j], closed, 1e-10 * closed);
            EXPECT_NEAR(s.alpha_closed[j], closed, 1e-12 * closed);
            EXPECT_NEAR(up[j] - s.u[j] * p[j], 1 / s.denom, 1e-10 * (1 / s.denom + std::abs(up[j])));
        }
    }
}

TEST(SolveA, HugePathStaysFinite) {
    // W ~ 300 would overflow a naive exp(int W) on a long interval
    const Grid g(0, 10, 2000);
    std::vector<double> w(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) w[j] = 30.0 * g[j];
    const BrownianPath p(g, w, 0, PathOrigin{PathOrigin::Kind::Deterministic, 0, 0, "steep"});
    const HomogeneousSolutions s = solve_A(p);
    for (std::size_t j = 0; j < g.size(); ++j) {
        EXPECT_TRUE(std::isfinite(s.u[j]));
        EXPECT_TRUE(std::isfinite(s.alpha_closed[j]));
    }
    EXPECT_NEAR(s.u[g.n()], 1.0, 1e-12);
}

TEST(SolveB, ZeroPathClosedForm) {
    const HomogeneousSolutions s = solve_B(deterministic_path("zero", kGrid));
    expect_boundary(s);
    EXPECT_NEAR(s.u[2048], 0.562175, 1e-5);
    EXPECT_NEAR(s.u[2048], oracle::u_zero_path_B(0.5), 1e-7);
    EXPECT_FALSE(s.weak_solution_expected);
}

TEST(SolveB, Identities) {
    const BrownianPath p = sample_brownian(kGrid, 4);
    const HomogeneousSolutions s = solve_B(p);
    expect_boundary(s);
    EXPECT_TRUE(s.weak_solution_expected);
    const auto up = s.u.d1(), vp = s.v.d1();
    for (std::size_t j = 0; j < kGrid.size(); ++j) {
        EXPECT_NEAR(s.u[j] + s.v[j], 1.0, 1e-12);
        const double z = std::exp(p[j] - 0.5 * kGrid[j]);
        EXPECT_NEAR(s.alpha[j] * s.denom, z, 1e-12 * z);
        EXPECT_EQ(up[j], -vp[j]);
        EXPECT_GT(s.alpha[j], 0.0);
    }
}

TEST(HomogeneousResidual, KindASmoothPaths) {
    for (const char* name : {"zero", "linear", "sine"}) {
        const BrownianPath p = deterministic_path(name, kGrid);
        const HomogeneousSolutions s = solve_A(p);
        for (int k = 1; k <= 4; ++k) {
            EXPECT_LE(homogeneous_residual(OperatorKind::A, s, sine_basis(kGrid, k), p), 1e-5);
            EXPECT_LE(homogeneous_residual(OperatorKind::A, s, sine_basis(kGrid, k), p, WhichSolution::V), 1e-5);
        }
    }
}

TEST(HomogeneousResidual, KindBZeroTestFunctionAndContracts) {
    const BrownianPath p = sample_brownian(kGrid, 5);
    const HomogeneousSolutions s = solve_B(p);
    EXPECT_EQ(homogeneous_residual(OperatorKind::B, s, SampledFunction::constant(kGrid, 0.0), p), 0.0);
    EXPECT_THROW(homogeneous_residual(OperatorKind::A, s, sine_basis(kGrid, 1), p), ContractError);
    EXPECT_THROW(homogeneous_residual(OperatorKind::B, s, SampledFunction::constant(kGrid, 1.0), p), ContractError);
}

TEST(HomogeneousResidual, KindBHalvesUnderRefinement) {
    const auto nested = oracle::nested_paths(100, 256, 4, 2, 91);
    std::vector<double> med;
    for (const auto& level : nested.levels) {
        std::vector<double> r;
        for (const auto& p : level) {
            r.push_back(homogeneous_residual(OperatorKind::B, solve_B(p), sine_basis(p.grid(), 1), p));
        }
        med.push_back(oracle::median(r));
    }
    EXPECT_GT(med[0], med[1]);
    EXPECT_GT(med[1], med[2]);
    EXPECT_LE(med[2], 0.5 * med[0]);
}

TEST(WongZakai, NodeExactAndRatio) {
    const BrownianPath p = sample_brownian(Grid(0, 1, 1024), 6);
    const WongZakaiReport r = wong_zakai_compare(p, {4, 32, 1024});
    ASSERT_EQ(r.levels.size(), 3u);
    EXPECT_EQ(r.path_n, 1024u);
    for (const auto& l : r.levels) {
        EXPECT_LE(l.sup_node_rel_dist_S, 1e-12);
        EXPECT_LE(l.ratio_identity_error, 1e-12);
        EXPECT_NEAR(l.sup_node_rel_gap_I, std::exp(0.5) - 1, 1e-12);
        EXPECT_GT(l.sup_node_dist_I, 0.0);
    }
    // polygon against the fine path: shrinks as the level approaches the path grid
    EXPECT_GT(r.levels[0].sup_fine_dist_S, r.levels[2].sup_fine_dist_S);
    EXPECT_LE(r.levels[2].sup_fine_dist_S, 1e-12);
}

TEST(WongZakai, PolygonalSolutionMatchesExponential) {
    const BrownianPath p = sample_brownian(Grid(0, 1, 64), 7);
    const std::vector<double> z = polygonal_solution_at_nodes(p, 16);
    ASSERT_EQ(z.size(), 17u);
    for (std::size_t j = 0; j <= 16; ++j) EXPECT_NEAR(z[j], std::exp(p[4 * j]), 1e-12 * std::exp(p[4 * j]));
}

TEST(WongZakai, RejectsNonNestedLevels) {
    const BrownianPath p = sample_brownian(Grid(0, 1, 48), 7);
    EXPECT_THROW(wong_zakai_compare(p, {5}), ConfigurationError);
    EXPECT_THROW(wong_zakai_compare(p, {16, 24}), ConfigurationError);
    EXPECT_THROW(wong_zakai_compare(p, {96}), ConfigurationError);
}
