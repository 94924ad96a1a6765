#pragma once

#include "wro/grid.hpp"
#include "wro/path.hpp"

#include <optional>
#include <span>
#include <vector>

namespace wro {

/// Function samples on a grid, optionally carrying analytic first and second
/// derivative samples. Derivatives are whatever the producer computed in
/// closed form; nothing in this library finite-differences `values`.
class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<double> values,
                    std::optional<std::vector<double>> d1 = std::nullopt,
                    std::optional<std::vector<double>> d2 = std::nullopt);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }

    bool has_d1() const { return d1_.has_value(); }
    bool has_d2() const { return d2_.has_value(); }
    /// Throws ContractError when the derivative was not supplied.
    std::span<const double> d1(const char* where = "d1") const;
    std::span<const double> d2(const char* where = "d2") const;

    /// Samples of t -> value(t) (and d1, d2 when the callables are given).
    template <class F>
    static SampledFunction from(const Grid& grid, F&& value) {
        std::vector<double> v(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) v[j] = value(grid[j]);
        return SampledFunction(grid, std::move(v));
    }
    template <class F, class F1>
    static SampledFunction from(const Grid& grid, F&& value, F1&& d1) {
        std::vector<double> v(grid.size()), p(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
            v[j] = value(grid[j]);
            p[j] = d1(grid[j]);
        }
        return SampledFunction(grid, std::move(v), std::move(p));
    }
    template <class F, class F1, class F2>
    static SampledFunction from(const Grid& grid, F&& value, F1&& d1, F2&& d2) {
        std::vector<double> v(grid.size()), p(grid.size()), pp(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
            v[j] = value(grid[j]);
            p[j] = d1(grid[j]);
            pp[j] = d2(grid[j]);
        }
        return SampledFunction(grid, std::move(v), std::move(p), std::move(pp));
    }

    static SampledFunction constant(const Grid& grid, double c);

    /// The path values as a function (no derivatives).
    static SampledFunction of_path(const BrownianPath& path);

private:
    Grid grid_;
    std::vector<double> values_;
    std::optional<std::vector<double>> d1_;
    std::optional<std::vector<double>> d2_;
};

/// alpha f + beta g. A derivative is kept only if both operands carry it.
SampledFunction combine(double alpha, const SampledFunction& f, double beta, const SampledFunction& g);
SampledFunction scale(double c, const SampledFunction& f);

/// Pointwise product of values (derivatives dropped).
SampledFunction multiply(const SampledFunction& f, const SampledFunction& g);

/// Composite trapezoid rule; the one quadrature used for every dt-integral.
double trapz(const Grid& grid, std::span<const double> y);
double trapz(const SampledFunction& f);

/// Node j holds the trapezoid value of the integral from a to t_j.
std::vector<double> cumtrapz(const Grid& grid, std::span<const double> y);
SampledFunction cumtrapz(const SampledFunction& f);

/// Left-point sum  sum_j f(t_j) (W(t_{j+1}) - W(t_j)).
double ito_sum(std::span<const double> f, const BrownianPath& path);
double ito_sum(const SampledFunction& f, const BrownianPath& path);

/// Trapezoidal sum  sum_j (f(t_j) + f(t_{j+1}))/2 (W(t_{j+1}) - W(t_j)).
double stratonovich_sum(const SampledFunction& f, const BrownianPath& path);

/// Discrete quadratic variation  sum_j (dW_j)^2.
double quadratic_variation(const BrownianPath& path);

/// ||f||_1 = sqrt( int f^2 + int f'^2 ); needs d1.
double h1_norm(const SampledFunction& f);

/// ||f||_2 = sqrt( int f^2 + int f'^2 + int f''^2 ); needs d1 and d2.
double w22_norm(const SampledFunction& f);

/// L2 norm sqrt(int f^2).
double l2_norm(const SampledFunction& f);

/// h_k(t) = sin(k pi (t - a) / (b - a)) with analytic d1 and d2.
SampledFunction sine_basis(const Grid& grid, int k);

/// |ito_sum(e^{W - s/2} h) - [h(b) e^{W(b)-b/2} - h(a) e^{W(a)-a/2} - int e^{W - s/2} h']|.
/// Vanishes only in the limit, and only for paths with quadratic variation
/// b - a; on smooth paths it measures the missing Ito correction.
double ito_formula_residual(const BrownianPath& path, const SampledFunction& h);

/// Neumaier-compensated sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace wro
