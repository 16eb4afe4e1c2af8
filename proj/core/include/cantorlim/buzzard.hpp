#ifndef CANTORLIM_BUZZARD_HPP
#define CANTORLIM_BUZZARD_HPP

#include "cantorlim/cantor.hpp"

#include <array>

namespace cantorlim {

/// Parameter block for the 9-branch horseshoe Cantor set and its
/// recurrent-compact certificate. See validate_params (certificate.hpp) for
/// the full constraint system.
struct BuzzardParams {
    double delta = 0.0;   // gap parameter
    double c0 = 0.0;      // piece side, = 1 - delta
    double c1 = 0.0;      // branch scale numerator, in (c0, 3c0/(2+c0))
    double kappa0 = 0.0;  // middle-band area threshold
    double kappa1 = 0.0;  // strip-lemma threshold
    double kappa2 = 0.0;  // outer-band area threshold
    double c_prime = 0.0; // annulus parameter c', in (1/4, c1/3]
    double lambda_growth = 0.0; // middle-band growth factor, > 1

    double q() const { return c1 / 3.0; } // per-letter contraction factor

    /// Loosest parameter set satisfying every constraint at the given gap:
    /// kappa0 = 1e-6, kappa1 at its strip bound (shaved to keep the strict
    /// inequality), kappa2 = 0.9*kappa1, c' = c1/3, and the largest growth
    /// factor passing the pigeonhole inequality with 1% slack.
    static BuzzardParams preset(double delta = 7e-8);
};

/// Letter k in {0..8} sits at the grid point (k%3 - 1) + (k/3 - 1)i.
Complex buzzard_point(Letter k);
inline constexpr Letter kBuzzardCenterLetter = 4; // the letter at 0

/// The exact piecewise-affine system: pieces S(a;c0), branches
/// f_(a,b)(z) = (c1/3) z + a over the full 9-letter shift.
CantorSystem make_buzzard_system(const BuzzardParams& p);

/// Nonlinear test system: branches f_(a,b)(z) = (c1/3) z + a + eta_ab z^2.
/// A single eta applies to all 81 branches unless a per-pair table is given.
struct PerturbedBuzzardSpec {
    double delta = 0.3;
    double c1 = 0.75;
    double eta = 1e-3;
    std::array<double, 81> eta_table{}; // used when per_pair is set
    bool per_pair = false;
};
CantorSystem make_perturbed_buzzard_system(const PerturbedBuzzardSpec& spec);

/// (...,4,4,4,a...a) truncation: depth letters of `fill` ending at `last`.
NegSequence constant_theta(Letter last, std::size_t depth, Letter fill = kBuzzardCenterLetter);

} // namespace cantorlim

#endif
