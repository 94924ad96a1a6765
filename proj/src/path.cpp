#include "wro/path.hpp"

#include "wro/errors.hpp"
#include "wro/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>

namespace wro {

PathShape parse_path_shape(const std::string& name) {
    if (name == "zero") return PathShape::Zero;
    if (name == "linear") return PathShape::Linear;
    if (name == "sine") return PathShape::Sine;
    throw ConfigurationError("unknown deterministic path '" + name + "' (expected zero, linear or sine)");
}

std::string to_string(PathShape shape) {
    switch (shape) {
        case PathShape::Zero: return "zero";
        case PathShape::Linear: return "linear";
        case PathShape::Sine: return "sine";
    }
    return "unknown";
}

std::string PathOrigin::tag() const {
    switch (kind) {
        case Kind::Sampled: return "sampled";
        case Kind::Refined: return "refined-from(" + std::to_string(seed) + "," + std::to_string(level) + ")";
        case Kind::Deterministic: return "deterministic(" + name + ")";
    }
    return "sampled";
}

PathOrigin PathOrigin::parse(const std::string& tag) {
    static const std::regex refined(R"(refined-from\((\d+),(\d+)\))");
    static const std::regex deterministic(R"(deterministic\((\w+)\))");
    PathOrigin origin;
    std::smatch m;
    if (tag == "sampled") {
        origin.kind = Kind::Sampled;
    } else if (std::regex_match(tag, m, refined)) {
        origin.kind = Kind::Refined;
        origin.seed = std::stoull(m[1].str());
        origin.level = static_cast<unsigned>(std::stoul(m[2].str()));
    } else if (std::regex_match(tag, m, deterministic)) {
        origin.kind = Kind::Deterministic;
        origin.name = m[1].str();
        parse_path_shape(origin.name);
    } else {
        throw ConfigurationError("unrecognized path origin tag '" + tag + "'");
    }
    return origin;
}

BrownianPath::BrownianPath(Grid grid, std::vector<double> values, std::uint64_t seed, PathOrigin origin)
    : grid_(std::move(grid)), values_(std::move(values)), seed_(seed), origin_(std::move(origin)) {
    if (values_.size() != grid_.size()) {
        throw DimensionError("path has " + std::to_string(values_.size()) + " values for a grid of " +
                             std::to_string(grid_.size()) + " nodes");
    }
    if (values_.front() != 0.0) {
        throw ContractError("paths start at W(a) = 0");
    }
}

double BrownianPath::max_abs() const {
    double m = 0.0;
    for (double w : values_) m = std::max(m, std::abs(w));
    return m;
}

BrownianPath sample_brownian(const Grid& grid, std::uint64_t seed) {
    NormalStream normals(derive_seed(seed, 0, 0));
    const double sd = std::sqrt(grid.dt());
    std::vector<double> w(grid.size());
    w[0] = 0.0;
    for (std::size_t j = 0; j < grid.n(); ++j) {
        w[j + 1] = w[j] + sd * normals.next();
    }
    return BrownianPath(grid, std::move(w), seed, PathOrigin{PathOrigin::Kind::Sampled, seed, 0, {}});
}

BrownianPath refine(const BrownianPath& path) {
    const Grid fine = path.grid().refined();
    const unsigned level = path.origin().level + 1;
    NormalStream normals(derive_seed(path.seed(), 0, level));
    // conditional sd of the midpoint given both endpoints: sqrt(parent_dt / 4)
    const double sd = std::sqrt(path.grid().dt() / 4.0);

    std::vector<double> w(fine.size());
    for (std::size_t j = 0; j < path.grid().n(); ++j) {
        w[2 * j] = path[j];
        w[2 * j + 1] = 0.5 * (path[j] + path[j + 1]) + sd * normals.next();
    }
    w.back() = path[path.grid().n()];

    PathOrigin origin = path.origin();
    origin.kind = PathOrigin::Kind::Refined;
    origin.seed = path.seed();
    origin.level = level;
    return BrownianPath(fine, std::move(w), path.seed(), origin);
}

BrownianPath refine(const BrownianPath& path, unsigned times) {
    BrownianPath out = path;
    for (unsigned i = 0; i < times; ++i) out = refine(out);
    return out;
}

double polygonal_eval(const BrownianPath& path, double t) {
    const Grid& g = path.grid();
    if (!(t >= g.a() && t <= g.b())) {
        throw DomainError("polygonal_eval: t = " + std::to_string(t) + " outside [" + std::to_string(g.a()) +
                          ", " + std::to_string(g.b()) + "]");
    }
    const auto nodes = g.nodes();
    // last node <= t, restricted to a segment index in [0, n-1]
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    std::size_t j = static_cast<std::size_t>(std::distance(nodes.begin(), it));
    j = std::clamp<std::size_t>(j == 0 ? 0 : j - 1, 0, g.n() - 1);
    if (t == nodes[j]) return path[j];
    if (t == nodes[j + 1]) return path[j + 1];
    const double lam = (t - nodes[j]) / (nodes[j + 1] - nodes[j]);
    return (1.0 - lam) * path[j] + lam * path[j + 1];
}

BrownianPath deterministic_path(PathShape shape, const Grid& grid) {
    std::vector<double> w(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid[j] - grid.a();
        switch (shape) {
            case PathShape::Zero: w[j] = 0.0; break;
            case PathShape::Linear: w[j] = x; break;
            case PathShape::Sine: w[j] = std::sin(2.0 * std::numbers::pi * x / grid.length()); break;
        }
    }
    w[0] = 0.0;
    PathOrigin origin{PathOrigin::Kind::Deterministic, 0, 0, to_string(shape)};
    return BrownianPath(grid, std::move(w), 0, origin);
}

BrownianPath deterministic_path(const std::string& name, const Grid& grid) {
    return deterministic_path(parse_path_shape(name), grid);
}

}  // namespace wro
