#include "wro/grid.hpp"

#include "wro/errors.hpp"

#include <cmath>
#include <string>

namespace wro {

Grid::Grid(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
    if (n == 0) {
        throw InvalidGridError("grid needs at least one subinterval (n = 0)");
    }
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw InvalidGridError("grid requires finite a < b, got a = " + std::to_string(a) +
                               ", b = " + std::to_string(b));
    }
    dt_ = (b - a) / static_cast<double>(n);
    nodes_.resize(n + 1);
    const double dn = static_cast<double>(n);
    for (std::size_t j = 0; j <= n; ++j) {
        const double dj = static_cast<double>(j);
        nodes_[j] = ((dn - dj) * a + dj * b) / dn;
    }
    nodes_.front() = a;
    nodes_.back() = b;
}

Grid Grid::refined() const { return Grid(a_, b_, 2 * n_); }

void require_same_grid(const Grid& lhs, const Grid& rhs, const char* where) {
    if (!(lhs == rhs)) {
        throw DimensionError(std::string(where) + ": operands are sampled on different grids (n = " +
                             std::to_string(lhs.n()) + " vs " + std::to_string(rhs.n()) + ")");
    }
}

}  // namespace wro
