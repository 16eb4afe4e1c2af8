#ifndef CANTORLIM_TEST_HELPERS_HPP
#define CANTORLIM_TEST_HELPERS_HPP

#include "cantorlim/buzzard.hpp"
#include "cantorlim/geometry.hpp"

#include <cstdint>
#include <random>

namespace cantorlim::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Complex random_complex(std::mt19937_64& g, double radius) {
    return {uniform(g, -radius, radius), uniform(g, -radius, radius)};
}

/// Monte Carlo oracle for area( S(0;side) ∩ A(S(0;side)) ): samples points
/// uniformly in the reference square and tests membership of A^-1(z) in it.
inline double mc_overlap_area(const AffineMap& A, double side, std::size_t samples,
                              std::uint64_t seed) {
    std::mt19937_64 g(seed);
    const AffineMap inv = invert(A);
    const double h = side / 2.0;
    std::size_t hits = 0;
    std::uniform_real_distribution<double> u(-h, h);
    for (std::size_t i = 0; i < samples; ++i) {
        const Complex z{u(g), u(g)};
        const Complex w = inv(z);
        if (std::abs(w.real()) <= h && std::abs(w.imag()) <= h) ++hits;
    }
    return side * side * static_cast<double>(hits) / static_cast<double>(samples);
}

/// Rightmost point of the Buzzard Cantor set within one piece frame:
/// m* = c1/(3 - c1), the fixed point of the corner branch after k^theta.
inline double buzzard_mstar(const BuzzardParams& p) { return p.c1 / (3.0 - p.c1); }

/// Translation that interleaves the two copies into the outermost gap so the
/// pair is linked at word sizes <= 2 but certifiably empty at size 3.
inline double gap_translation(const BuzzardParams& p) {
    const double q = p.q();
    const double mstar = buzzard_mstar(p);
    const double egap = p.c0 / 2.0 - mstar;
    return 2.0 * mstar + egap * (q * q + q * q * q);
}

} // namespace cantorlim::testing

#endif
