#include "wro/calculus.hpp"

#include "wro/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wro {

namespace {

void require_length(const Grid& grid, std::size_t len, const char* what) {
    if (len != grid.size()) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(grid.size()) +
                             " samples, got " + std::to_string(len));
    }
}

}  // namespace

SampledFunction::SampledFunction(Grid grid, std::vector<double> values, std::optional<std::vector<double>> d1,
                                 std::optional<std::vector<double>> d2)
    : grid_(std::move(grid)), values_(std::move(values)), d1_(std::move(d1)), d2_(std::move(d2)) {
    require_length(grid_, values_.size(), "SampledFunction values");
    if (d1_) require_length(grid_, d1_->size(), "SampledFunction d1");
    if (d2_) require_length(grid_, d2_->size(), "SampledFunction d2");
}

std::span<const double> SampledFunction::d1(const char* where) const {
    if (!d1_) throw ContractError(std::string(where) + ": function carries no first-derivative samples");
    return *d1_;
}

std::span<const double> SampledFunction::d2(const char* where) const {
    if (!d2_) throw ContractError(std::string(where) + ": function carries no second-derivative samples");
    return *d2_;
}

SampledFunction SampledFunction::constant(const Grid& grid, double c) {
    return SampledFunction(grid, std::vector<double>(grid.size(), c), std::vector<double>(grid.size(), 0.0),
                           std::vector<double>(grid.size(), 0.0));
}

SampledFunction SampledFunction::of_path(const BrownianPath& path) {
    return SampledFunction(path.grid(), std::vector<double>(path.values().begin(), path.values().end()));
}

SampledFunction combine(double alpha, const SampledFunction& f, double beta, const SampledFunction& g) {
    require_same_grid(f.grid(), g.grid(), "combine");
    auto lin = [&](std::span<const double> x, std::span<const double> y) {
        std::vector<double> out(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) out[j] = alpha * x[j] + beta * y[j];
        return out;
    };
    std::optional<std::vector<double>> d1, d2;
    if (f.has_d1() && g.has_d1()) d1 = lin(f.d1(), g.d1());
    if (f.has_d2() && g.has_d2()) d2 = lin(f.d2(), g.d2());
    return SampledFunction(f.grid(), lin(f.values(), g.values()), std::move(d1), std::move(d2));
}

SampledFunction scale(double c, const SampledFunction& f) {
    auto mul = [c](std::span<const double> x) {
        std::vector<double> out(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) out[j] = c * x[j];
        return out;
    };
    std::optional<std::vector<double>> d1, d2;
    if (f.has_d1()) d1 = mul(f.d1());
    if (f.has_d2()) d2 = mul(f.d2());
    return SampledFunction(f.grid(), mul(f.values()), std::move(d1), std::move(d2));
}

SampledFunction multiply(const SampledFunction& f, const SampledFunction& g) {
    require_same_grid(f.grid(), g.grid(), "multiply");
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = f[j] * g[j];
    return SampledFunction(f.grid(), std::move(out));
}

double trapz(const Grid& grid, std::span<const double> y) {
    require_length(grid, y.size(), "trapz");
    double interior = 0.0;
    for (std::size_t j = 1; j + 1 < y.size(); ++j) interior += y[j];
    return grid.dt() * (interior + 0.5 * (y.front() + y.back()));
}

double trapz(const SampledFunction& f) { return trapz(f.grid(), f.values()); }

std::vector<double> cumtrapz(const Grid& grid, std::span<const double> y) {
    require_length(grid, y.size(), "cumtrapz");
    std::vector<double> out(y.size());
    out[0] = 0.0;
    const double h = 0.5 * grid.dt();
    for (std::size_t j = 0; j + 1 < y.size(); ++j) out[j + 1] = out[j] + h * (y[j] + y[j + 1]);
    return out;
}

SampledFunction cumtrapz(const SampledFunction& f) {
    // the integrand is the analytic derivative of the running integral
    std::vector<double> d1(f.values().begin(), f.values().end());
    return SampledFunction(f.grid(), cumtrapz(f.grid(), f.values()), std::move(d1));
}

double ito_sum(std::span<const double> f, const BrownianPath& path) {
    require_length(path.grid(), f.size(), "ito_sum");
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < f.size(); ++j) s += f[j] * (path[j + 1] - path[j]);
    return s;
}

double ito_sum(const SampledFunction& f, const BrownianPath& path) {
    require_same_grid(f.grid(), path.grid(), "ito_sum");
    return ito_sum(f.values(), path);
}

double stratonovich_sum(const SampledFunction& f, const BrownianPath& path) {
    require_same_grid(f.grid(), path.grid(), "stratonovich_sum");
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < f.size(); ++j) s += 0.5 * (f[j] + f[j + 1]) * (path[j + 1] - path[j]);
    return s;
}

double quadratic_variation(const BrownianPath& path) {
    double s = 0.0;
    for (std::size_t j = 0; j < path.grid().n(); ++j) {
        const double dw = path[j + 1] - path[j];
        s += dw * dw;
    }
    return s;
}

namespace {

double integral_of_square(const Grid& grid, std::span<const double> y) {
    std::vector<double> sq(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) sq[j] = y[j] * y[j];
    return trapz(grid, sq);
}

}  // namespace

double l2_norm(const SampledFunction& f) { return std::sqrt(integral_of_square(f.grid(), f.values())); }

double h1_norm(const SampledFunction& f) {
    const auto d1 = f.d1("h1_norm");
    return std::sqrt(integral_of_square(f.grid(), f.values()) + integral_of_square(f.grid(), d1));
}

double w22_norm(const SampledFunction& f) {
    const auto d1 = f.d1("w22_norm");
    const auto d2 = f.d2("w22_norm");
    return std::sqrt(integral_of_square(f.grid(), f.values()) + integral_of_square(f.grid(), d1) +
                     integral_of_square(f.grid(), d2));
}

SampledFunction sine_basis(const Grid& grid, int k) {
    if (k < 1) throw ContractError("sine_basis: k must be >= 1, got " + std::to_string(k));
    const double omega = k * std::numbers::pi / grid.length();
    const double a = grid.a();
    auto h = SampledFunction::from(
        grid, [&](double t) { return std::sin(omega * (t - a)); },
        [&](double t) { return omega * std::cos(omega * (t - a)); },
        [&](double t) { return -omega * omega * std::sin(omega * (t - a)); });
    // pin the Dirichlet values; sin(k pi) is ~1e-16 in floating point
    std::vector<double> v(h.values().begin(), h.values().end());
    v.front() = 0.0;
    v.back() = 0.0;
    std::vector<double> d1(h.d1().begin(), h.d1().end());
    std::vector<double> d2(h.d2().begin(), h.d2().end());
    d2.front() = 0.0;
    d2.back() = 0.0;
    return SampledFunction(grid, std::move(v), std::move(d1), std::move(d2));
}

double ito_formula_residual(const BrownianPath& path, const SampledFunction& h) {
    require_same_grid(h.grid(), path.grid(), "ito_formula_residual");
    const Grid& g = path.grid();
    const auto hp = h.d1("ito_formula_residual");
    std::vector<double> zh(g.size()), zhp(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double z = std::exp(path[j] - 0.5 * g[j]);
        zh[j] = z * h[j];
        zhp[j] = z * hp[j];
    }
    const double lhs = ito_sum(zh, path);
    const double rhs = zh.back() - zh.front() - trapz(g, zhp);
    return std::abs(lhs - rhs);
}

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

}  // namespace wro
