#ifndef CANTORLIM_CANTOR_HPP
#define CANTORLIM_CANTOR_HPP

#include "cantorlim/geometry.hpp"
#include "cantorlim/symbolic.hpp"

#include <functional>
#include <optional>

namespace cantorlim {

/// Pointwise map with derivative. `df` may be empty, in which case callers
/// fall back to central finite differences with step 1e-6. `fdiff`, when
/// present, evaluates f(base+s) - f(base) without cancellation; deep
/// normalized-iterate evaluations use it to stay accurate below the
/// contraction scale.
struct MapOracle {
    std::function<Complex(Complex)> f;
    std::function<Complex(Complex)> df;
    std::function<Complex(Complex base, Complex s)> fdiff;

    Complex operator()(Complex z) const { return f(z); }
    Complex derivative(Complex z) const;
};

/// One inverse branch f_(a,b) of the expanding map, carrying G(b) into G(a).
struct Branch {
    enum class Kind { Affine, Differentiable };

    Kind kind = Kind::Affine;
    Letter domain_letter = 0; // b: the piece the branch is applied to
    Letter image_letter = 0;  // a: the piece receiving the image

    AffineMap affine;  // Kind::Affine
    MapOracle oracle;  // Kind::Differentiable
    double holder_eps = 1.0;   // Hölder exponent of the derivative
    double holder_const = 0.0; // Hölder constant of the derivative

    static Branch make_affine(Letter image, Letter domain, const AffineMap& m);
    static Branch make_differentiable(Letter image, Letter domain, MapOracle oracle,
                                      double eps, double holder_const);

    Complex apply(Complex z) const;
    Complex derivative(Complex z) const;
};

struct Piece {
    Letter letter = 0;
    ConvexPolygon region;      // G(a)
    Complex base_point{0, 0};  // c_a in K(a)
};

struct CantorSystemOptions {
    /// Outward slack allowed in the Markov inclusion check f_(a,b)(G(b)) ⊆ G(a).
    /// Nonzero values admit systems whose pieces are only correct up to the
    /// stated inflation (the G* reading of the pieces).
    double markov_slack = 1e-9;
    /// Points sampled per piece edge for the expansion / Markov checks.
    int boundary_samples = 8;
};

/// Immutable dynamically defined conformal Cantor set model.
class CantorSystem {
public:
    CantorSystem(Alphabet alphabet, TransitionSet transitions, std::vector<Piece> pieces,
                 std::vector<Branch> branches, double mu, CantorSystemOptions opts = {});

    const Alphabet& alphabet() const { return alphabet_; }
    const TransitionSet& transitions() const { return transitions_; }
    const Piece& piece(Letter a) const;
    const Branch& branch(Letter image, Letter domain) const;
    double mu() const { return mu_; }
    bool affine() const { return all_affine_; }
    double max_piece_diameter() const { return max_piece_diam_; }
    /// 1/mu upper bound actually measured for branch contraction.
    double contraction_bound() const { return contraction_; }
    double holder_eps() const { return holder_eps_; }
    const CantorSystemOptions& options() const { return opts_; }

private:
    void validate() const;

    Alphabet alphabet_;
    TransitionSet transitions_;
    std::vector<Piece> pieces_;
    std::vector<std::optional<Branch>> branch_table_; // image*n + domain
    double mu_;
    bool all_affine_ = true;
    double max_piece_diam_ = 0.0;
    double contraction_ = 0.0;
    double holder_eps_ = 1.0;
    CantorSystemOptions opts_;
};

/// Composition f_ā = f_(a0,a1) ∘ ... ∘ f_(a_{n-1},a_n), acting on G(a_n).
struct WordMap {
    const CantorSystem* sys = nullptr;
    FiniteWord word;
    bool is_affine = false;
    AffineMap affine; // valid when is_affine

    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;

    /// Every branch along the word admits a cancellation-free difference
    /// evaluation (affine branches always do).
    bool has_stable_diff() const;
    /// f_word(base + s) - f_word(base), propagated through the branch
    /// difference oracles; requires has_stable_diff().
    Complex stable_diff(Complex base, Complex s) const;
};

/// Region containing the cylinder G(ā): exact affine image of the terminal
/// piece for affine systems; sampled-hull image with certified outward
/// inflation for differentiable branches.
ConvexPolygon cylinder(const CantorSystem& sys, const FiniteWord& word);
double cylinder_diam(const CantorSystem& sys, const FiniteWord& word);
WordMap branch_word(const CantorSystem& sys, const FiniteWord& word);

/// |Df_ā(p1)| / |Df_ā(p2)|; p1, p2 must lie in (a small neighbourhood of)
/// the terminal piece G(a_n).
double distortion_ratio(const CantorSystem& sys, const FiniteWord& word, Complex p1, Complex p2);

/// Grid of evaluation points covering a piece (bounding box lattice
/// intersected with the region). n x n before filtering.
std::vector<Complex> piece_grid(const Piece& piece, int n = 50);

class CantorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace cantorlim

#endif
