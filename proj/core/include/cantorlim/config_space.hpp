#ifndef CANTORLIM_CONFIG_SPACE_HPP
#define CANTORLIM_CONFIG_SPACE_HPP

#include "cantorlim/limits.hpp"

#include <functional>
#include <optional>

namespace cantorlim {

/// (A, theta): an affine configuration of the limit geometry k^theta.
struct AffineLimitConfig {
    NegSequence theta;
    AffineMap map;
};

/// Pair of affine configurations of limit geometries, normalized so the left
/// map is the identity; the state renormalization operators act on.
struct RelativeConfig {
    NegSequence left_theta;
    NegSequence right_theta;
    AffineMap right_map;
};

/// Quotient representative of a configuration pair: normalizes the common
/// affine change of coordinates away, leaving (theta, theta', Id, A^-1 ∘ A').
RelativeConfig make_relative(const AffineLimitConfig& left, const AffineLimitConfig& right);

/// Supplies the transition affine F^{theta a} for one side of a pair.
using TransitionProvider =
    std::function<AffineMap(const CantorSystem&, const NegSequence&, Letter)>;

/// Exact formula for affine systems; numeric transition_affine otherwise.
TransitionProvider default_transition_provider(double tol = 1e-10);

/// Appends the given letters (either may be absent, not both), composes the
/// transition affines, and renormalizes so the left map is the identity:
/// right' = F_left^-1 ∘ right ∘ F_right.
RelativeConfig renormalize(const CantorSystem& left_sys, const CantorSystem& right_sys,
                           const RelativeConfig& rc, std::optional<Letter> left_letter,
                           std::optional<Letter> right_letter,
                           const TransitionProvider& provider = default_transition_provider());

/// Closed contact of the two limit-geometry images:
/// k^theta(G(theta0))  vs  right_map(k^theta'(G(theta0'))).
bool is_linked(const CantorSystem& left_sys, const CantorSystem& right_sys,
               const RelativeConfig& rc, double tol = 1e-12);

struct SearchOutcome {
    enum class Kind { Witness, Exhausted };
    Kind kind = Kind::Exhausted;

    // Witness: a common point candidate and the word pair reaching it.
    Complex point{0.0, 0.0};
    FiniteWord left_word;  // includes the root letters theta0
    FiniteWord right_word;

    // Exhausted: certificate data. Sound for the closed cylinder covers, so
    // certified_empty implies the images of the Cantor sets are disjoint.
    bool certified_empty = false;
    std::size_t deepest_linked_size = 0; // largest word size with a surviving pair
    FiniteWord deepest_left;
    FiniteWord deepest_right;

    std::size_t nodes_visited = 0;
};

/// Depth-first balanced search for a common point of the two configured
/// Cantor sets. Renormalizes the side whose image is currently larger (ties
/// to the left), prunes unlinked branches, and explores letters ordered by
/// the distance between the resulting image centers (deterministic).
SearchOutcome search_intersection(const CantorSystem& left_sys, const CantorSystem& right_sys,
                                  const RelativeConfig& rc, int max_depth,
                                  const TransitionProvider& provider = default_transition_provider());

class ConfigSpaceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace cantorlim

#endif
