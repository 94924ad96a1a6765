#pragma once

#include "wro/homogeneous.hpp"

#include <Eigen/Dense>

namespace wro {

/// Green kernel of either operator on one path:
///
///     G(t, s) = factor * u(max(t, s)) v(min(t, s)) / alpha(s)
///
/// with factor 1 for A and 2 for B. Entries are evaluated on demand; the
/// dense (n+1) x (n+1) matrix is only built by matrix().
class GreenKernel {
public:
    GreenKernel(OperatorKind kind, HomogeneousSolutions sol);

    OperatorKind kind() const { return kind_; }
    const Grid& grid() const { return sol_.grid(); }
    double factor() const { return factor_; }
    const HomogeneousSolutions& solutions() const { return sol_; }
    /// The alpha used for assembly (the closed-form samples).
    std::span<const double> alpha() const { return sol_.alpha_closed; }

    /// G(t_i, s_j).
    double operator()(std::size_t i, std::size_t j) const;

    /// factor u(t)v(s)/alpha(s) (s <= t branch) and factor u(s)v(t)/alpha(s)
    /// (t <= s branch), both evaluated at (t_i, s_j) regardless of ordering.
    std::pair<double, double> branches(std::size_t i, std::size_t j) const;

    Eigen::MatrixXd matrix() const;

    double min_alpha() const;
    /// max_i |branch1(t_i, t_i) - branch2(t_i, t_i)| / max_i |G(t_i, t_i)|.
    double diag_continuity_error() const;

private:
    OperatorKind kind_;
    HomogeneousSolutions sol_;
    double factor_;
};

GreenKernel kernel(OperatorKind kind, HomogeneousSolutions sol);

/// (Tf)(t) = factor [u(t) int_a^t v f/alpha + v(t) int_t^b u f/alpha], with the
/// analytic derivative (Tf)'(t) = factor [u'(t) int_a^t v f/alpha + v'(t) int_t^b u f/alpha]
/// attached as d1. Splitting each trapezoid row at the diagonal node gives
/// the same sum as the full-row trapezoid rule, in O(n) instead of O(n^2).
SampledFunction apply(const GreenKernel& kernel, const SampledFunction& f);

/// |eps_kind(Tf, h) - <f, h>|; h must vanish at a and b and carry d1.
double inverse_residual(OperatorKind kind, const GreenKernel& kernel, const SampledFunction& f,
                        const SampledFunction& h, const BrownianPath& path);

}  // namespace wro
