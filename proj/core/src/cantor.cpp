#include "cantorlim/cantor.hpp"

#include <cmath>
#include <sstream>

namespace cantorlim {

Complex MapOracle::derivative(Complex z) const {
    if (df) return df(z);
    const double h = 1e-6;
    // conformal maps: d/dz from the horizontal difference quotient
    return (f(z + Complex{h, 0.0}) - f(z - Complex{h, 0.0})) / (2.0 * h);
}

Branch Branch::make_affine(Letter image, Letter domain, const AffineMap& m) {
    if (m.alpha == Complex{0.0, 0.0}) throw CantorError("affine branch must be invertible");
    Branch b;
    b.kind = Kind::Affine;
    b.image_letter = image;
    b.domain_letter = domain;
    b.affine = m;
    return b;
}

Branch Branch::make_differentiable(Letter image, Letter domain, MapOracle oracle,
                                   double eps, double holder_const) {
    if (!oracle.f) throw CantorError("differentiable branch requires a map oracle");
    if (!(eps > 0.0 && eps <= 1.0)) throw CantorError("Hölder exponent must lie in (0,1]");
    if (holder_const < 0.0) throw CantorError("Hölder constant must be non-negative");
    Branch b;
    b.kind = Kind::Differentiable;
    b.image_letter = image;
    b.domain_letter = domain;
    b.oracle = std::move(oracle);
    b.holder_eps = eps;
    b.holder_const = holder_const;
    return b;
}

Complex Branch::apply(Complex z) const {
    return kind == Kind::Affine ? affine(z) : oracle(z);
}

Complex Branch::derivative(Complex z) const {
    return kind == Kind::Affine ? affine.alpha : oracle.derivative(z);
}

namespace {

std::vector<Complex> boundary_samples(const ConvexPolygon& p, int per_edge) {
    std::vector<Complex> out;
    const auto& v = p.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex a = v[i];
        const Complex b = v[(i + 1) % v.size()];
        for (int k = 0; k < per_edge; ++k)
            out.push_back(a + (b - a) * (static_cast<double>(k) / per_edge));
    }
    return out;
}

} // namespace

CantorSystem::CantorSystem(Alphabet alphabet, TransitionSet transitions, std::vector<Piece> pieces,
                           std::vector<Branch> branches, double mu, CantorSystemOptions opts)
    : alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)),
      pieces_(std::move(pieces)),
      mu_(mu),
      opts_(opts) {
    const std::size_t n = alphabet_.size();
    if (pieces_.size() != n) throw CantorError("need exactly one piece per letter");
    std::vector<Piece> ordered(n);
    std::vector<bool> seen(n, false);
    for (auto& p : pieces_) {
        if (p.letter >= n || seen[p.letter]) throw CantorError("piece letters must enumerate the alphabet");
        seen[p.letter] = true;
        ordered[p.letter] = std::move(p);
    }
    pieces_ = std::move(ordered);

    branch_table_.assign(n * n, std::nullopt);
    for (auto& b : branches) {
        if (b.image_letter >= n || b.domain_letter >= n) throw CantorError("branch letter out of range");
        if (!transitions_.allows(b.image_letter, b.domain_letter))
            throw CantorError("branch pair not admissible");
        auto& slot = branch_table_[static_cast<std::size_t>(b.image_letter) * n + b.domain_letter];
        if (slot) throw CantorError("duplicate branch for letter pair");
        if (b.kind != Branch::Kind::Affine) {
            all_affine_ = false;
            holder_eps_ = std::min(holder_eps_, b.holder_eps);
        }
        slot = std::move(b);
    }
    validate();
}

const Piece& CantorSystem::piece(Letter a) const {
    if (a >= pieces_.size()) throw CantorError("letter out of range");
    return pieces_[a];
}

const Branch& CantorSystem::branch(Letter image, Letter domain) const {
    const std::size_t n = alphabet_.size();
    if (image >= n || domain >= n) throw CantorError("letter out of range");
    const auto& slot = branch_table_[static_cast<std::size_t>(image) * n + domain];
    if (!slot) throw CantorError("no branch for letter pair (" + std::to_string(image) + "," +
                                 std::to_string(domain) + ")");
    return *slot;
}

void CantorSystem::validate() const {
    const std::size_t n = alphabet_.size();
    if (!(mu_ > 1.0)) throw CantorError("expansion bound mu must exceed 1");
    if (!is_mixing(alphabet_, transitions_)) throw CantorError("transition set is not topologically mixing");

    for (const auto& p : pieces_) {
        if (p.region.vertices.size() < 3) throw CantorError("piece region must be a polygon");
        if (!polygon_contains_point(p.region, p.base_point, 1e-12))
            throw CantorError("piece base point must lie inside its region");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (polygons_touch(pieces_[a].region, pieces_[b].region, 0.0))
                throw CantorError("piece regions must be pairwise disjoint");

    auto* self = const_cast<CantorSystem*>(this);
    self->max_piece_diam_ = 0.0;
    for (const auto& p : pieces_) self->max_piece_diam_ = std::max(max_piece_diam_, diameter(p.region));

    // Markov inclusion and sampled contraction for every admissible pair.
    double worst_contraction = 0.0;
    for (std::size_t ia = 0; ia < n; ++ia)
        for (std::size_t ib = 0; ib < n; ++ib) {
            const Letter a = static_cast<Letter>(ia), b = static_cast<Letter>(ib);
            if (!transitions_.allows(a, b)) {
                if (branch_table_[ia * n + ib])
                    throw CantorError("branch present for inadmissible pair");
                continue;
            }
            const auto& slot = branch_table_[ia * n + ib];
            if (!slot) throw CantorError("missing branch for admissible pair");
            const Branch& br = *slot;
            const ConvexPolygon& dom = pieces_[b].region;
            const ConvexPolygon target = opts_.markov_slack > 0.0
                                             ? offset_outward(pieces_[a].region, opts_.markov_slack)
                                             : pieces_[a].region;

            auto samples = boundary_samples(dom, opts_.boundary_samples);
            samples.push_back(centroid(dom));
            double max_df = 0.0;
            for (const auto& z : samples) {
                if (!polygon_contains_point(target, br.apply(z), 1e-12))
                    throw CantorError("Markov inclusion violated: branch image leaves target piece");
                max_df = std::max(max_df, std::abs(br.derivative(z)));
            }
            if (br.kind == Branch::Kind::Differentiable) {
                // Hölder slack: samples are at most half an edge apart on the
                // boundary, and interior values are controlled by convexity.
                const double gap = diameter(dom) / opts_.boundary_samples;
                max_df += br.holder_const * std::pow(gap, br.holder_eps);
            }
            worst_contraction = std::max(worst_contraction, max_df);
        }

    if (worst_contraction * mu_ > 1.0 + 1e-12) {
        std::ostringstream oss;
        oss << "expansion check failed: sampled |Df| up to " << worst_contraction
            << " but 1/mu = " << 1.0 / mu_;
        throw CantorError(oss.str());
    }
    self->contraction_ = worst_contraction;
}

Complex WordMap::operator()(Complex z) const {
    if (is_affine) return affine(z);
    const auto& s = word.symbols();
    // innermost branch first: f_(a_{n-1},a_n) applies to z in G(a_n)
    for (std::size_t i = s.size() - 1; i-- > 0;) z = sys->branch(s[i], s[i + 1]).apply(z);
    return z;
}

Complex WordMap::derivative(Complex z) const {
    if (is_affine) return affine.alpha;
    const auto& s = word.symbols();
    Complex d{1.0, 0.0};
    for (std::size_t i = s.size() - 1; i-- > 0;) {
        const Branch& br = sys->branch(s[i], s[i + 1]);
        d *= br.derivative(z);
        z = br.apply(z);
    }
    return d;
}

bool WordMap::has_stable_diff() const {
    if (is_affine) return true;
    const auto& s = word.symbols();
    for (std::size_t i = s.size() - 1; i-- > 0;) {
        const Branch& br = sys->branch(s[i], s[i + 1]);
        if (br.kind == Branch::Kind::Differentiable && !br.oracle.fdiff) return false;
    }
    return true;
}

Complex WordMap::stable_diff(Complex base, Complex s) const {
    if (is_affine) return affine.alpha * s;
    const auto& sy = word.symbols();
    for (std::size_t i = sy.size() - 1; i-- > 0;) {
        const Branch& br = sys->branch(sy[i], sy[i + 1]);
        if (br.kind == Branch::Kind::Affine) {
            s = br.affine.alpha * s;
        } else {
            s = br.oracle.fdiff(base, s);
        }
        base = br.apply(base);
    }
    return s;
}

WordMap branch_word(const CantorSystem& sys, const FiniteWord& word) {
    if (!is_admissible(word, sys.transitions())) throw CantorError("word is not admissible");
    WordMap m;
    m.sys = &sys;
    m.word = word;
    if (sys.affine()) {
        m.is_affine = true;
        AffineMap acc = AffineMap::identity();
        const auto& s = word.symbols();
        for (std::size_t i = 0; i + 1 < s.size(); ++i)
            acc = compose(acc, sys.branch(s[i], s[i + 1]).affine);
        m.affine = acc;
    }
    return m;
}

ConvexPolygon cylinder(const CantorSystem& sys, const FiniteWord& word) {
    if (!is_admissible(word, sys.transitions())) throw CantorError("word is not admissible");
    const Piece& terminal = sys.piece(word.last());
    const WordMap f = branch_word(sys, word);
    if (f.is_affine) return transformed(terminal.region, f.affine);

    // Sampled boundary hull with a certified outward inflation. Each composed
    // step is affine up to a Hölder remainder; the inflation below dominates
    // the total sagitta of all boundary arcs between adjacent samples.
    const int per_edge = 8;
    auto samples = boundary_samples(terminal.region, per_edge);
    std::vector<Complex> images;
    images.reserve(samples.size());
    for (const auto& z : samples) images.push_back(f(z));

    double seg = 0.0; // longest gap between adjacent boundary samples
    const auto& v = terminal.region.vertices;
    for (std::size_t i = 0; i < v.size(); ++i)
        seg = std::max(seg, std::abs(v[(i + 1) % v.size()] - v[i]) / per_edge);

    double holder_c = 0.0, eps = 1.0;
    const auto& s = word.symbols();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const Branch& br = sys.branch(s[i], s[i + 1]);
        holder_c = std::max(holder_c, br.holder_const);
        eps = std::min(eps, br.holder_eps);
    }
    const double r = sys.contraction_bound();
    // per-level sagitta bound H * (segment at that level)^(1+eps), summed over
    // levels with geometric segment decay
    double inflation = 0.0;
    double level_seg = seg;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        inflation = inflation * r + holder_c * std::pow(level_seg, 1.0 + eps);
        level_seg *= r;
    }
    return offset_outward(convex_hull(std::move(images)), inflation);
}

double cylinder_diam(const CantorSystem& sys, const FiniteWord& word) {
    return diameter(cylinder(sys, word));
}

double distortion_ratio(const CantorSystem& sys, const FiniteWord& word, Complex p1, Complex p2) {
    if (!is_admissible(word, sys.transitions())) throw CantorError("word is not admissible");
    const Piece& terminal = sys.piece(word.last());
    const double slack = 1e-9 + sys.options().markov_slack;
    const ConvexPolygon dom = offset_outward(terminal.region, slack);
    if (!polygon_contains_point(dom, p1) || !polygon_contains_point(dom, p2))
        throw CantorError("distortion points must lie in the terminal piece");
    const WordMap f = branch_word(sys, word);
    return std::abs(f.derivative(p1)) / std::abs(f.derivative(p2));
}

std::vector<Complex> piece_grid(const Piece& piece, int n) {
    if (n < 2) throw CantorError("grid needs at least 2 points per axis");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& z : piece.region.vertices) {
        xmin = std::min(xmin, z.real());
        xmax = std::max(xmax, z.real());
        ymin = std::min(ymin, z.imag());
        ymax = std::max(ymax, z.imag());
    }
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex z{xmin + (xmax - xmin) * i / (n - 1.0), ymin + (ymax - ymin) * j / (n - 1.0)};
            if (polygon_contains_point(piece.region, z, 1e-12)) out.push_back(z);
        }
    return out;
}

} // namespace cantorlim
