#pragma once

#include "wro/grid.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wro {

enum class PathShape { Zero, Linear, Sine };

PathShape parse_path_shape(const std::string& name);
std::string to_string(PathShape shape);

/// Where a path came from. Serialized as "sampled", "refined-from(<seed>,<level>)"
/// or "deterministic(<name>)".
struct PathOrigin {
    enum class Kind { Sampled, Refined, Deterministic };

    Kind kind = Kind::Sampled;
    std::uint64_t seed = 0;
    unsigned level = 0;      // number of bridge refinements applied
    std::string name;        // shape name for deterministic paths

    std::string tag() const;
    static PathOrigin parse(const std::string& tag);

    friend bool operator==(const PathOrigin&, const PathOrigin&) = default;
};

/// A discretized environment W on a grid, W(a) = 0. The white noise W' is
/// never stored; stochastic integrals only see the increments.
class BrownianPath {
public:
    BrownianPath(Grid grid, std::vector<double> values, std::uint64_t seed, PathOrigin origin);

    const Grid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t j) const { return values_[j]; }
    std::uint64_t seed() const { return seed_; }
    const PathOrigin& origin() const { return origin_; }

    double max_abs() const;

private:
    Grid grid_;
    std::vector<double> values_;
    std::uint64_t seed_;
    PathOrigin origin_;
};

/// W(a) = 0 and independent N(0, dt) increments drawn from
/// NormalStream(derive_seed(seed, 0, 0)).
BrownianPath sample_brownian(const Grid& grid, std::uint64_t seed);

/// Doubles the resolution. Parent nodes are copied; each new midpoint is the
/// Brownian-bridge draw (W_j + W_{j+1}) / 2 + sqrt(dt / 4) Z with Z from
/// NormalStream(derive_seed(seed, 0, level + 1)).
BrownianPath refine(const BrownianPath& path);

/// Applies refine() `times` times.
BrownianPath refine(const BrownianPath& path, unsigned times);

/// Piecewise-linear interpolant W_n(t) through the path nodes.
double polygonal_eval(const BrownianPath& path, double t);

BrownianPath deterministic_path(PathShape shape, const Grid& grid);
BrownianPath deterministic_path(const std::string& name, const Grid& grid);

}  // namespace wro
