#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wro {

/// Uniform grid on [a, b] with n subintervals. Nodes are computed as
/// ((n - j) a + j b) / n so both endpoints are exact and the nodes of a
/// grid are reproduced bit-for-bit at the even nodes of its refinement.
class Grid {
public:
    Grid(double a, double b, std::size_t n);

    double a() const { return a_; }
    double b() const { return b_; }
    std::size_t n() const { return n_; }
    std::size_t size() const { return nodes_.size(); }
    double dt() const { return dt_; }
    double length() const { return b_ - a_; }

    double operator[](std::size_t j) const { return nodes_[j]; }
    std::span<const double> nodes() const { return nodes_; }

    /// Grid with 2n subintervals on the same interval.
    Grid refined() const;

    friend bool operator==(const Grid& lhs, const Grid& rhs) {
        return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_ && lhs.n_ == rhs.n_;
    }

private:
    double a_;
    double b_;
    std::size_t n_;
    double dt_;
    std::vector<double> nodes_;
};

/// Throws DimensionError unless both grids are identical.
void require_same_grid(const Grid& lhs, const Grid& rhs, const char* where);

}  // namespace wro
