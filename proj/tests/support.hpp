#pragma once

#include <random>

#include "volkov/spinor.hpp"

namespace testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline volkov::Vec3 random_vec(double scale) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
}

inline volkov::FourMomentum random_momentum(double scale, double m = 1.0) {
    const auto k = random_vec(scale);
    return volkov::FourMomentum::make_on_shell(k[0], k[1], k[2], m);
}

inline volkov::Bispinor random_spinor() {
    volkov::Bispinor s;
    for (int c = 0; c < 4; ++c) s[c] = {uniform(-1, 1), uniform(-1, 1)};
    return s;
}

}  // namespace testing
