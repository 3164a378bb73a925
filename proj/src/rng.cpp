#include "manireg/rng.hpp"

#include <cmath>
#include <numbers>

namespace manireg::rng {

GaussPair gaussian_pair(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                        std::uint64_t c, double sigma) {
    double u1 = uniform01(key(seed, a, b, 2 * c));
    double u2 = uniform01(key(seed, a, b, 2 * c + 1));
    double r = sigma * std::sqrt(-2.0 * std::log(u1));
    double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

} // namespace manireg::rng
