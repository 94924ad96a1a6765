#pragma once

#include "wro/calculus.hpp"
#include "wro/path.hpp"

#include <cstdint>
#include <string>

namespace wro {

/// A: (Lf) = f'' - W f' - W' f.   B: (Lf) = f''/2 - W' f'/2.
enum class OperatorKind { A, B };

OperatorKind parse_operator_kind(const std::string& tag);
std::string to_string(OperatorKind kind);

/// <f, h> = int f h dt.
double inner(const SampledFunction& f, const SampledFunction& h);

/// eps_A(f, h) = -int f' h' dt + int f h' W dt. No stochastic integral, so
/// it is defined pathwise for any continuous W.
double form_A(const SampledFunction& f, const SampledFunction& h, const BrownianPath& path);

/// eps_B(f, h) = -1/2 int f' h' dt - 1/2 int f' h dW, the dW integral taken
/// as a left-point Ito sum on the path grid.
double form_B(const SampledFunction& f, const SampledFunction& h, const BrownianPath& path);

double form(OperatorKind kind, const SampledFunction& f, const SampledFunction& h, const BrownianPath& path);

struct FormSplit {
    double eps1 = 0.0;  // symmetric part
    double eps2 = 0.0;  // remainder
};

/// Symmetric + remainder split of each form.
///
/// A (f, h need d1):
///   eps1 = -1/2 int f'h' + 1/2 int f h' W + 1/2 int f' h W
///   eps2 = -1/2 int f'h' + 1/2 int f h' W - 1/2 int f' h W
/// B (f, h need d1 and d2) splits the Ito-transformed form
/// -1/2 int f'h' + 1/2 int (f'' h + f' h') W:
///   eps1 = -1/4 int f'h' + 1/4 int f'' h W + 1/4 int f h'' W + 1/2 int f'h' W
///   eps2 = -1/4 int f'h' + 1/4 int f'' h W - 1/4 int f h'' W
FormSplit decompose(OperatorKind kind, const SampledFunction& f, const SampledFunction& h,
                    const BrownianPath& path);

struct FormInequalityReport {
    OperatorKind kind = OperatorKind::A;
    double M = 0.0;               // max |W| on the grid
    double C_lower = 0.0;         // semibound constant
    double c_coercive = 0.0;
    double K_poincare = 0.0;      // (b - a) / pi
    int basis_size = 0;
    int random_combinations = 0;
    int functions_checked = 0;

    // eps1(f,f) - C ||f||^2  (norm ||.||_1 for A, ||.||_2 for B)
    double worst_margin_semibound = 0.0;
    // eps1(f,f) - C ||f||, the unsquared reading of the same bound
    double worst_margin_semibound_unsquared = 0.0;
    // |eps2(f,f)| - c ||f||_1^2
    double worst_margin_coercive = 0.0;
    // max | |eps2(f,f)| - q ||f'||^2 | with q = 1/2 (A) or 1/4 (B)
    double eps2_identity_error = 0.0;
    // K ||f'|| - ||f||, worst over all f
    double worst_margin_poincare = 0.0;
    bool poincare_ok = false;

    bool semibound_ok() const;
    bool coercive_ok() const;
    bool all_ok() const { return semibound_ok() && coercive_ok() && poincare_ok; }
};

struct InequalityOptions {
    int random_combinations = 20;
    /// Seed of the random combinations; the report is a pure function of
    /// (path, basis_size, options).
    std::uint64_t seed = 0;
    /// Margins down to -tolerance * scale count as satisfied (rounding floor
    /// for equality cases such as Poincare at h_1).
    double tolerance = 1e-12;
};

/// Replays the semibound, coercivity and Poincare chains on h_1..h_k and on
/// random unit combinations of them. Failures are reported, never thrown.
///
/// Constants: K = (b - a)/pi;  A: C = -(1 + M)/2, c = min(1/4, 1/(4K^2));
/// B: C = -(1/2 + M/2), c = min(1/8, 1/(8K^2)) (eps2(f,f) = -1/4 ||f'||^2).
FormInequalityReport inequality_report(OperatorKind kind, const BrownianPath& path, int basis_size,
                                       const InequalityOptions& options = {});

}  // namespace wro
