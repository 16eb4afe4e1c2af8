#ifndef CANTORLIM_HORSESHOE_HPP
#define CANTORLIM_HORSESHOE_HPP

#include "cantorlim/buzzard.hpp"

#include <optional>
#include <utility>

namespace cantorlim {

struct C2Point {
    Complex z{0.0, 0.0};
    Complex w{0.0, 0.0};
};

/// The piecewise-affine horseshoe F(z,w) = ((c1/3)z + b, (3/c1)(w - b)) on the
/// component (a,b) of K1 = K0 x K0.
class HorseshoeMap {
public:
    explicit HorseshoeMap(BuzzardParams params);

    const BuzzardParams& params() const { return params_; }

    /// Component (a,b) with z in closure S(a;c0), w in closure S(b;c0).
    std::optional<std::pair<Letter, Letter>> component_of(const C2Point& p) const;

    std::optional<C2Point> apply(const C2Point& p) const;
    std::optional<C2Point> apply_inverse(const C2Point& p) const;

private:
    std::optional<Letter> piece_letter(Complex v) const;
    BuzzardParams params_;
};

/// Product box of the depth-d covering of the invariant set: the z side
/// follows the backward itinerary (a_0, a_-1, ..., a_-d), the w side the
/// forward itinerary (b_0, ..., b_d). Both sides are cylinder words of the
/// unstable-slice Cantor system.
struct LambdaBox {
    FiniteWord z_word;
    FiniteWord w_word;
};

/// Closed-form cylinder square of the slice system for a word of size n:
/// side (c1/3)^n c0, centered at the composed branch image of the last
/// letter's point.
Square buzzard_cylinder_square(const BuzzardParams& p, const FiniteWord& word);

Square lambda_box_z_region(const HorseshoeMap& map, const LambdaBox& box);
Square lambda_box_w_region(const HorseshoeMap& map, const LambdaBox& box);

/// Covering of ∩_{|n|<=depth} F^n(K1) by product boxes; 9^(2 depth + 2)
/// boxes for the full shift. Materialization is capped at depth 2.
std::vector<LambdaBox> approximate_lambda(const HorseshoeMap& map, int depth);

/// Number of boxes at the w-side resolution used by the unstable slice:
/// distinct (time-0 z-piece, w-word) projections of the depth-d covering.
std::size_t lambda_slice_box_count(const HorseshoeMap& map, int depth);

/// The w-coordinates of the depth-d boxes meeting {z = 0}: exactly the
/// depth-d cylinders of the slice Cantor system, as squares in {0} x C.
std::vector<Square> unstable_slice_cantor(const HorseshoeMap& map, int depth);

class HorseshoeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace cantorlim

#endif
