#pragma once

#include <cstdint>
#include <random>

namespace wro {

/// Stream seed as a pure function of (master seed, path index, level).
///
/// Each input is folded through one SplitMix64 finalizer round:
///   s = mix(master); s = mix(s ^ mix(index + 1)); s = mix(s ^ mix(level + 0x5157))
/// where mix is the SplitMix64 output function. The result never depends on
/// call order or any global generator state.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::uint64_t level);

/// Standard normal variates from std::mt19937_64 via the Box-Muller
/// transform. Uniforms take the top 53 bits of each engine draw, so the
/// stream is identical on every conforming standard library (unlike
/// std::normal_distribution, whose algorithm is unspecified).
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    double uniform_open();  // in (0, 1]

    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace wro
