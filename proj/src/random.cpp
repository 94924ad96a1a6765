#include "wro/random.hpp"

#include <cmath>
#include <numbers>

namespace wro {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t level) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ splitmix64(index + 1));
    s = splitmix64(s ^ splitmix64(level + 0x5157));
    return s;
}

double NormalStream::uniform_open() {
    // (k + 1) / 2^53 with k uniform on [0, 2^53)
    const std::uint64_t k = engine_() >> 11;
    return (static_cast<double>(k) + 1.0) * 0x1.0p-53;
}

double NormalStream::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

}  // namespace wro
