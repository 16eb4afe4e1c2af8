#include "cantorlim/limits.hpp"

#include <cmath>
#include <limits>

namespace cantorlim {

Complex NormalizedIterate::operator()(Complex z) const {
    if (exact_affine) return affine_form(z);
    if (stable) {
        const Complex c = word_map.sys->piece(theta.last()).base_point;
        return word_map.stable_diff(c, z - c) / base_deriv;
    }
    return (word_map(z) - base_image) / base_deriv;
}

Complex NormalizedIterate::derivative(Complex z) const {
    if (exact_affine) return affine_form.alpha;
    return word_map.derivative(z) / base_deriv;
}

Complex NormalizedIterate::inverse(Complex w) const {
    if (exact_affine) return invert(affine_form)(w);
    // k is a small perturbation of z -> z - c, so Newton from the affine
    // guess converges in a few steps.
    const Complex c = invert(affine_form_guess())(w);
    Complex z = c;
    for (int it = 0; it < 60; ++it) {
        const Complex r = (*this)(z)-w;
        if (std::abs(r) < 1e-14) return z;
        const Complex d = derivative(z);
        if (std::abs(d) < 1e-300) break;
        z -= r / d;
    }
    if (std::abs((*this)(z)-w) < 1e-10) return z;
    throw LimitsError("limit-geometry inversion did not converge");
}

ConvexPolygon NormalizedIterate::image(const CantorSystem& sys) const {
    const Piece& p = sys.piece(theta.last());
    if (exact_affine) return transformed(p.region, affine_form);
    std::vector<Complex> pts;
    const auto& v = p.region.vertices;
    const int per_edge = 8;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex a = v[i], b = v[(i + 1) % v.size()];
        for (int k = 0; k < per_edge; ++k) pts.push_back((*this)(a + (b - a) * (double(k) / per_edge)));
    }
    // error radius plus a curvature allowance for the sampled boundary
    double seg = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        seg = std::max(seg, std::abs(v[(i + 1) % v.size()] - v[i]) / per_edge);
    return offset_outward(convex_hull(std::move(pts)), error_radius + seg * seg);
}

namespace {

NormalizedIterate build_iterate(const CantorSystem& sys, const NegSequence& theta, std::size_t n) {
    NormalizedIterate it;
    it.theta = theta;
    it.depth = n;
    const Complex c = sys.piece(theta.last()).base_point;
    if (n == 0) {
        it.word_map.sys = &sys;
        it.word_map.is_affine = true;
        it.word_map.affine = AffineMap::identity();
        it.base_image = c;
        it.base_deriv = Complex{1.0, 0.0};
        it.phi = AffineMap{Complex{1.0, 0.0}, -c};
        return it;
    }
    it.word_map = branch_word(sys, theta.tail_word(n));
    it.stable = it.word_map.has_stable_diff();
    it.base_image = it.word_map(c);
    it.base_deriv = it.word_map.derivative(c);
    if (std::abs(it.base_deriv) == 0.0) throw LimitsError("degenerate branch derivative at base point");
    it.phi = AffineMap{Complex{1.0, 0.0} / it.base_deriv, -it.base_image / it.base_deriv};
    return it;
}

// The deep composition contracts to scale |base_deriv|, so recovering the
// O(1) normalized values divides the subtraction rounding by that scale.
// Observed noise tracks ulp(coordinate)/|base_deriv|; a 3x allowance is kept.
// With branch difference oracles the division amplification disappears and
// only the per-level products contribute.
double fp_floor(const CantorSystem& sys, const NormalizedIterate& it) {
    const double coord = sys.max_piece_diameter() + 2.0;
    if (it.stable) return (static_cast<double>(it.depth) + 4.0) * coord * 4.0e-16;
    return coord * 3.0e-16 / std::abs(it.base_deriv);
}

} // namespace

AffineMap NormalizedIterate::affine_form_guess() const {
    // every normalized iterate is a bounded perturbation of z - c
    const Complex c = word_map.sys->piece(theta.last()).base_point;
    return AffineMap{Complex{1.0, 0.0}, -c};
}

NormalizedIterate limit_geometry(const CantorSystem& sys, const NegSequence& theta, double tol,
                                 const LimitOptions& opts) {
    if (!is_admissible(theta, sys.transitions())) throw LimitsError("theta is not admissible");
    if (!(tol > 0.0)) throw LimitsError("tolerance must be positive");

    const Complex c = sys.piece(theta.last()).base_point;
    if (sys.affine()) {
        NormalizedIterate it = build_iterate(sys, theta, std::min<std::size_t>(theta.truncation_depth(), 1));
        it.exact_affine = true;
        it.affine_form = AffineMap{Complex{1.0, 0.0}, -c};
        it.error_radius = 0.0;
        return it;
    }

    const double ratio = std::pow(1.0 / sys.mu(), sys.holder_eps());
    const auto grid = piece_grid(sys.piece(theta.last()), opts.grid_n);
    NormalizedIterate prev = build_iterate(sys, theta, 0);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= theta.truncation_depth(); ++n) {
        NormalizedIterate cur = build_iterate(sys, theta, n);
        double step = 0.0;
        for (const auto& z : grid) step = std::max(step, std::abs(cur(z) - prev(z)));
        const double total = step * ratio / (1.0 - ratio) + fp_floor(sys, cur);
        best = std::min(best, total);
        if (total <= tol) {
            cur.error_radius = total;
            return cur;
        }
        // deeper iterates only add evaluation noise once the floor dominates
        if (fp_floor(sys, cur) > tol) break;
        prev = std::move(cur);
    }
    throw TolUnreachable("theta truncation too shallow for requested tolerance", best);
}

std::vector<double> iterate_step_sizes(const CantorSystem& sys, const NegSequence& theta,
                                       std::size_t depth, int grid_n) {
    if (!is_admissible(theta, sys.transitions())) throw LimitsError("theta is not admissible");
    if (depth > theta.truncation_depth()) throw LimitsError("depth exceeds truncation");
    const auto grid = piece_grid(sys.piece(theta.last()), grid_n);
    std::vector<double> steps;
    steps.reserve(depth);
    NormalizedIterate prev = build_iterate(sys, theta, 0);
    for (std::size_t n = 1; n <= depth; ++n) {
        NormalizedIterate cur = build_iterate(sys, theta, n);
        double step = 0.0;
        for (const auto& z : grid) step = std::max(step, std::abs(cur(z) - prev(z)));
        steps.push_back(step);
        prev = std::move(cur);
    }
    return steps;
}

TransitionAffine transition_affine(const CantorSystem& sys, const NegSequence& theta, Letter letter,
                                   double tol) {
    if (!is_admissible(theta, sys.transitions())) throw LimitsError("theta is not admissible");
    if (!sys.transitions().allows(theta.last(), letter))
        throw LimitsError("appended letter is not admissible after theta");
    if (!(tol > 0.0)) throw LimitsError("tolerance must be positive");

    TransitionAffine out;
    out.source = theta;
    out.appended = letter;

    if (sys.affine()) {
        // F = k^theta ∘ f_(theta0, a) ∘ (k^{theta a})^-1 with k = z - c:
        // F(z) = f(z + c_a) - c_theta0, exact.
        const Branch& br = sys.branch(theta.last(), letter);
        const Complex ca = sys.piece(letter).base_point;
        const Complex c0 = sys.piece(theta.last()).base_point;
        out.map = AffineMap{br.affine.alpha, br.affine(ca) - c0};
        out.error_radius = 0.0;
        return out;
    }

    const NegSequence ext = theta.appended(letter);
    const double radius = diameter(sys.piece(letter).region);
    const double ratio = std::pow(1.0 / sys.mu(), sys.holder_eps());

    // F_n = Phi_{theta_n} ∘ Phi_{(theta a)_{n+1}}^{-1}, converging
    // exponentially; built from the anchored normalizer data, so
    // alpha = d_{n+1}/d_n and beta = (c_{n+1} - c_n)/d_n without the
    // huge-coefficient intermediate form.
    double floor_n = 0.0;
    auto f_at = [&](std::size_t n) {
        const NormalizedIterate a = build_iterate(sys, theta, n);
        const NormalizedIterate b = build_iterate(sys, ext, n + 1);
        floor_n = fp_floor(sys, a);
        return AffineMap{b.base_deriv / a.base_deriv,
                         (b.base_image - a.base_image) / a.base_deriv};
    };

    AffineMap prev = f_at(0);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= theta.truncation_depth(); ++n) {
        const AffineMap cur = f_at(n);
        const double step = affine_distance(cur, prev, radius);
        const double total = step * ratio / (1.0 - ratio) + floor_n;
        best = std::min(best, total);
        if (total <= tol) {
            out.map = cur;
            out.error_radius = total;
            return out;
        }
        if (floor_n > tol) break;
        prev = cur;
    }
    throw TolUnreachable("theta truncation too shallow for transition-affine tolerance", best);
}

Complex PerturbationPart::operator()(Complex w) const {
    if (!polygon_contains_point(domain, w, 1e-9))
        throw LimitsError("perturbation part evaluated outside its certified domain");
    return h(k.inverse(w));
}

PerturbationPart perturbation_part(const CantorSystem& sys, MapOracle h, const NegSequence& theta,
                                   double tol) {
    if (!h.f) throw LimitsError("configuration oracle required");
    PerturbationPart p;
    p.k = limit_geometry(sys, theta, tol);
    p.h = std::move(h);
    p.domain = p.k.image(sys);
    return p;
}

double scaled_renorm_flattening(const CantorSystem& sys, const MapOracle& h, const FiniteWord& word,
                                const NegSequence& theta, double tol, int grid_n) {
    if (!h.f) throw LimitsError("configuration oracle required");
    if (word.first() != theta.last()) throw LimitsError("word must start at theta_0's letter");
    if (!is_admissible(word, sys.transitions())) throw LimitsError("word is not admissible");

    const WordMap f = branch_word(sys, word);
    const Letter terminal = word.last();
    const Complex c = sys.piece(terminal).base_point;

    const Complex v0 = h(f(c));
    const Complex d0 = h.derivative(f(c)) * f.derivative(c);
    if (std::abs(d0) < 1e-300) throw LimitsError("ill-conditioned normalizer: derivative vanishes at base");
    const AffineMap A{Complex{1.0, 0.0} / d0, -v0 / d0};

    NegSequence ext = theta;
    for (std::size_t i = 1; i < word.length(); ++i) ext = ext.appended(word.at(i));
    const NormalizedIterate k_ext = limit_geometry(sys, ext, tol);

    double sup = 0.0;
    for (const auto& z : piece_grid(sys.piece(terminal), grid_n))
        sup = std::max(sup, std::abs(A(h(f(z))) - k_ext(z)));
    return sup;
}

} // namespace cantorlim
