#pragma once

#include "wro/calculus.hpp"
#include "wro/forms.hpp"
#include "wro/path.hpp"

#include <vector>

namespace wro {

/// The two explicit homogeneous solutions of one operator on one path.
///
/// Kind A, with E(t) = exp(int_a^t W), I(t) = int_a^t exp(-int_a^s W) ds,
/// J = I(b) - I, D = E(b) I(b):
///     u = E I / D,  v = E J / D,  u' = (W E I + 1)/D,  v' = (W E J - 1)/D,
///     alpha = u'v - v'u = E I(b) / D^2.
/// Kind B, with Z(t) = exp(W(t) - t/2), D = int_a^b Z:
///     u = int_a^t Z / D,  v = int_t^b Z / D,  u' = -v' = Z / D,  alpha = Z / D.
///
/// Every integral is a cumulative trapezoid evaluated with a log-space shift,
/// so only ratios of O(1) quantities are exponentiated.
struct HomogeneousSolutions {
    OperatorKind kind = OperatorKind::A;
    SampledFunction u;
    SampledFunction v;
    std::vector<double> alpha;         // u'v - v'u from the derivative samples
    std::vector<double> alpha_closed;  // cancellation-free closed form
    double denom = 0.0;                // D (may overflow to inf on extreme paths)
    double log_denom = 0.0;
    std::vector<double> E;  // kind A only
    std::vector<double> I;  // kind A only
    /// False for kind B on a deterministic path: the formulas still evaluate,
    /// but the weak equation needs quadratic variation t and will not hold.
    bool weak_solution_expected = true;

    const Grid& grid() const { return u.grid(); }
};

HomogeneousSolutions solve_A(const BrownianPath& path);
HomogeneousSolutions solve_B(const BrownianPath& path);
HomogeneousSolutions solve(OperatorKind kind, const BrownianPath& path);

enum class WhichSolution { U, V };

/// |eps_kind(u, h)| (or with v). h must vanish at both endpoints and carry d1.
double homogeneous_residual(OperatorKind kind, const HomogeneousSolutions& sol, const SampledFunction& h,
                            const BrownianPath& path, WhichSolution which = WhichSolution::U);

struct WongZakaiLevel {
    std::size_t n = 0;
    double sup_node_dist_S = 0.0;      // max_j |Z_n(t_j) - e^{W(t_j) - W(a)}|
    double sup_node_rel_dist_S = 0.0;  // same, relative
    double sup_node_dist_I = 0.0;      // max_j |Z_n(t_j) - e^{W(t_j) - t_j/2}|
    double sup_node_rel_gap_I = 0.0;   // max_j |Z_n / e^{W - t/2} - 1|
    double ratio_identity_error = 0.0; // max_j |(Z_n / e^{W - t/2}) / e^{t_j/2 - W(a)} - 1|
    double sup_fine_dist_S = 0.0;      // max over the input path nodes, polygon between level nodes
};

struct WongZakaiReport {
    std::size_t path_n = 0;
    std::vector<WongZakaiLevel> levels;
};

/// Solves Z_n' = W_n' Z_n, Z_n(a) = 1 segment by segment on each level's
/// polygonal interpolant of `path` and measures the distance to the two
/// candidate limits: S(t) = e^{W(t) - W(a)} and I(t) = e^{W(t) - t/2}.
/// Every level must divide path.grid().n() and the levels must divide each
/// other (nested grids).
WongZakaiReport wong_zakai_compare(const BrownianPath& path, const std::vector<std::size_t>& levels);

/// Z_n at the nodes of the coarse grid with `level` subintervals.
std::vector<double> polygonal_solution_at_nodes(const BrownianPath& path, std::size_t level);

}  // namespace wro
