#pragma once

#include <cstdint>

namespace manireg {

/// Stateless counter-based random numbers. Every draw is a pure function of
/// (seed, counters), so parallel and serial evaluation orders produce
/// bitwise identical streams.
namespace rng {

/// splitmix64 finalizer.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0) {
    std::uint64_t h = mix(seed ^ 0x853c49e6748fea9bULL);
    h = mix(h ^ a);
    h = mix(h ^ b);
    h = mix(h ^ c);
    return h;
}

/// Uniform double in (0, 1].
inline double uniform01(std::uint64_t k) {
    return (static_cast<double>(k >> 11) + 1.0) * 0x1.0p-53;
}

inline double uniform(std::uint64_t k, double lo, double hi) {
    return lo + (hi - lo) * uniform01(k);
}

/// Box-Muller pair of independent N(0, sigma^2) draws from one key.
struct GaussPair {
    double x, y;
};

GaussPair gaussian_pair(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                        std::uint64_t c, double sigma);

} // namespace rng
} // namespace manireg
