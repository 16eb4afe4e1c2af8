#ifndef CANTORLIM_LIMITS_HPP
#define CANTORLIM_LIMITS_HPP

#include "cantorlim/cantor.hpp"

namespace cantorlim {

/// k^theta_n = Phi_n ∘ f_{theta_n}: the depth-n normalized iterate, with a
/// certified C0 distance bound to the true limit geometry k^theta.
/// Satisfies k(c) = 0 and Dk(c) = 1 at the base point of the final piece.
struct NormalizedIterate {
    NegSequence theta;
    std::size_t depth = 0;
    AffineMap phi; // the normalizer as an affine map (reference form)
    WordMap word_map;
    // anchored normalizer data: k(z) = (f(z) - base_image)/base_deriv, which
    // is exact at the base point and avoids the huge-coefficient form of phi
    Complex base_image{0.0, 0.0};
    Complex base_deriv{1.0, 0.0};
    bool stable = false; // branch difference oracles available along the word
    double error_radius = 0.0;
    bool exact_affine = false;
    AffineMap affine_form; // valid when exact_affine: the limit itself

    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;
    /// Newton inversion (exact for affine systems). Throws if no convergence.
    Complex inverse(Complex w) const;
    /// Region the iterate maps the piece onto (conservative for nonlinear).
    ConvexPolygon image(const CantorSystem& sys) const;
    /// The affine map z - c every iterate perturbs around (Newton seed).
    AffineMap affine_form_guess() const;
};

/// Raised when the requested certified radius cannot be reached with the
/// given truncation; carries the radius that was achievable.
class TolUnreachable : public std::runtime_error {
public:
    TolUnreachable(const std::string& what, double achievable_radius)
        : std::runtime_error(what), achievable(achievable_radius) {}
    double achievable;
};

struct LimitOptions {
    int grid_n = 40; // sup-norm measurement grid per axis
};

/// Deepens the normalized-iterate scheme until the certified tail bound
/// (geometric series on the measured step sizes, ratio mu^-eps) falls below
/// tol. Affine systems return the exact limit with zero radius.
NormalizedIterate limit_geometry(const CantorSystem& sys, const NegSequence& theta, double tol,
                                 const LimitOptions& opts = {});

/// Successive sup-step sizes ||k_n - k_{n-1}|| over the measurement grid,
/// for n = 1..depth (depth <= theta.truncation_depth()).
std::vector<double> iterate_step_sizes(const CantorSystem& sys, const NegSequence& theta,
                                       std::size_t depth, int grid_n = 40);

/// F^{theta a}: the affine map with F ∘ k^{theta a} = k^theta ∘ f_(theta0,a).
struct TransitionAffine {
    AffineMap map;
    NegSequence source;
    Letter appended = 0;
    double error_radius = 0.0;
};

TransitionAffine transition_affine(const CantorSystem& sys, const NegSequence& theta, Letter letter,
                                   double tol);

/// h ∘ (k^theta)^-1 with its certified input domain k^theta(G(theta0)).
struct PerturbationPart {
    NormalizedIterate k;
    MapOracle h;
    ConvexPolygon domain;

    Complex operator()(Complex w) const;
};

PerturbationPart perturbation_part(const CantorSystem& sys, MapOracle h, const NegSequence& theta,
                                   double tol);

/// || A_{h_n} ∘ h_n ∘ (k^{theta a_n})^-1 - Id ||_C0 on a grid, where
/// h_n = h ∘ f_word and A_{h_n} normalizes h_n at the terminal base point.
/// Measured as sup_z | A(h(f_word(z))) - k^{theta·word}(z) | over the
/// terminal piece, which is the same quantity without inverting k.
double scaled_renorm_flattening(const CantorSystem& sys, const MapOracle& h, const FiniteWord& word,
                                const NegSequence& theta, double tol = 1e-12, int grid_n = 50);

class LimitsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace cantorlim

#endif
