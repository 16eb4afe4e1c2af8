#include "cantorlim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cantorlim {

namespace {

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

Complex segment_intersection(Complex p1, Complex p2, Complex q1, Complex q2) {
    const double x1 = p1.real(), y1 = p1.imag(), x2 = p2.real(), y2 = p2.imag();
    const double x3 = q1.real(), y3 = q1.imag(), x4 = q2.real(), y4 = q2.imag();
    const double den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4);
    if (den == 0.0) return p2; // parallel: endpoint handling covers the contact
    const double a = x1 * y2 - y1 * x2;
    const double b = x3 * y4 - y3 * x4;
    return {(a * (x3 - x4) - (x1 - x2) * b) / den, (a * (y3 - y4) - (y1 - y2) * b) / den};
}

double point_segment_distance(Complex z, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() + (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}

} // namespace

AffineMap compose(const AffineMap& f, const AffineMap& g) {
    return {f.alpha * g.alpha, f.alpha * g.beta + f.beta};
}

AffineMap invert(const AffineMap& f) {
    if (f.alpha == Complex{0.0, 0.0}) throw GeometryError("affine map with zero linear part is not invertible");
    const Complex ia = Complex{1.0, 0.0} / f.alpha;
    return {ia, -f.beta * ia};
}

double affine_distance(const AffineMap& f, const AffineMap& g, double radius) {
    return std::abs(f.alpha - g.alpha) * radius + std::abs(f.beta - g.beta);
}

ConvexPolygon Square::to_polygon() const {
    const double h = side / 2.0;
    return {{center + Complex{-h, -h}, center + Complex{h, -h},
             center + Complex{h, h}, center + Complex{-h, h}}};
}

bool Square::contains(Complex z, double tol) const {
    const double h = side / 2.0 + tol;
    return std::abs(z.real() - center.real()) <= h && std::abs(z.imag() - center.imag()) <= h;
}

double area(const ConvexPolygon& p) {
    const auto& v = p.vertices;
    if (v.size() < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex& a = v[i];
        const Complex& b = v[(i + 1) % v.size()];
        s += a.real() * b.imag() - b.real() * a.imag();
    }
    return std::abs(s) / 2.0;
}

double diameter(const ConvexPolygon& p) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < p.vertices.size(); ++j)
            d = std::max(d, std::abs(p.vertices[i] - p.vertices[j]));
    return d;
}

Complex centroid(const ConvexPolygon& p) {
    const auto& v = p.vertices;
    if (v.empty()) throw GeometryError("centroid of empty polygon");
    const double a = area(p);
    if (a < 1e-300) { // degenerate: fall back to vertex mean
        Complex s{0.0, 0.0};
        for (const auto& z : v) s += z;
        return s / static_cast<double>(v.size());
    }
    double cx = 0.0, cy = 0.0, signed_a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex& p0 = v[i];
        const Complex& p1 = v[(i + 1) % v.size()];
        const double w = p0.real() * p1.imag() - p1.real() * p0.imag();
        signed_a += w;
        cx += (p0.real() + p1.real()) * w;
        cy += (p0.imag() + p1.imag()) * w;
    }
    return {cx / (3.0 * signed_a), cy / (3.0 * signed_a)};
}

ConvexPolygon transformed(const ConvexPolygon& p, const AffineMap& f) {
    ConvexPolygon out;
    out.vertices.reserve(p.vertices.size());
    for (const auto& z : p.vertices) out.vertices.push_back(f(z));
    return out;
}

ConvexPolygon clip(const ConvexPolygon& subject, const ConvexPolygon& clip_region) {
    if (subject.empty() || clip_region.empty()) return {};
    std::vector<Complex> out = subject.vertices;
    const auto& cv = clip_region.vertices;
    for (std::size_t e = 0; e < cv.size() && !out.empty(); ++e) {
        const Complex c1 = cv[e];
        const Complex c2 = cv[(e + 1) % cv.size()];
        std::vector<Complex> in;
        in.swap(out);
        for (std::size_t i = 0; i < in.size(); ++i) {
            const Complex cur = in[i];
            const Complex prev = in[(i + in.size() - 1) % in.size()];
            const bool cur_in = cross(c1, c2, cur) >= 0.0;
            const bool prev_in = cross(c1, c2, prev) >= 0.0;
            if (cur_in) {
                if (!prev_in) out.push_back(segment_intersection(prev, cur, c1, c2));
                out.push_back(cur);
            } else if (prev_in) {
                out.push_back(segment_intersection(prev, cur, c1, c2));
            }
        }
    }
    return {std::move(out)};
}

double polygon_distance(const ConvexPolygon& p, const ConvexPolygon& q) {
    if (p.empty() || q.empty()) return std::numeric_limits<double>::infinity();
    // Separating-axis gap over both polygons' edge normals. Positive gap =
    // separation distance along that axis; polygons overlap iff all gaps < 0.
    double best_gap = -std::numeric_limits<double>::infinity();
    const ConvexPolygon* polys[2] = {&p, &q};
    for (int pi = 0; pi < 2; ++pi) {
        const auto& v = polys[pi]->vertices;
        const auto& other = polys[1 - pi]->vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Complex a = v[i];
            const Complex b = v[(i + 1) % v.size()];
            Complex n{b.imag() - a.imag(), a.real() - b.real()}; // outward for ccw
            const double len = std::abs(n);
            if (len == 0.0) continue;
            n /= len;
            double self_max = -std::numeric_limits<double>::infinity();
            for (const auto& z : v)
                self_max = std::max(self_max, z.real() * n.real() + z.imag() * n.imag());
            double other_min = std::numeric_limits<double>::infinity();
            for (const auto& z : other)
                other_min = std::min(other_min, z.real() * n.real() + z.imag() * n.imag());
            best_gap = std::max(best_gap, other_min - self_max);
        }
    }
    if (best_gap <= 0.0) return 0.0;
    // Separated: SAT gap along one axis underestimates the true distance for
    // vertex-vertex closest features, so refine with vertex/edge distances.
    double d = std::numeric_limits<double>::infinity();
    for (int pi = 0; pi < 2; ++pi) {
        const auto& v = polys[pi]->vertices;
        const auto& other = polys[1 - pi]->vertices;
        for (const auto& z : other)
            for (std::size_t i = 0; i < v.size(); ++i)
                d = std::min(d, point_segment_distance(z, v[i], v[(i + 1) % v.size()]));
    }
    return d;
}

bool polygons_touch(const ConvexPolygon& p, const ConvexPolygon& q, double tol) {
    return polygon_distance(p, q) <= tol;
}

bool polygon_contains_point(const ConvexPolygon& p, Complex z, double tol) {
    const auto& v = p.vertices;
    if (v.size() < 3) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex a = v[i];
        const Complex b = v[(i + 1) % v.size()];
        const double edge_len = std::abs(b - a);
        if (cross(a, b, z) < -tol * edge_len) return false;
    }
    return true;
}

bool polygon_contains(const ConvexPolygon& outer, const ConvexPolygon& inner, double tol) {
    if (inner.empty()) return true;
    if (outer.vertices.size() < 3) return false;
    for (const auto& z : inner.vertices)
        if (!polygon_contains_point(outer, z, tol)) return false;
    return true;
}

ConvexPolygon convex_hull(std::vector<Complex> pts) {
    if (pts.size() < 3) return {std::move(pts)};
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return {std::move(pts)};
    std::vector<Complex> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) { // upper
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return {std::move(hull)};
}

ConvexPolygon offset_outward(const ConvexPolygon& p, double r) {
    if (r < 0.0) throw GeometryError("offset radius must be non-negative");
    if (r == 0.0 || p.vertices.size() < 3) return p;
    const auto& v = p.vertices;
    const std::size_t n = v.size();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        // intersection of the two adjacent edges shifted outward by r
        const Complex a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
        auto shift = [r](Complex s, Complex e) {
            Complex nrm{e.imag() - s.imag(), s.real() - e.real()};
            nrm /= std::abs(nrm);
            return std::make_pair(s + r * nrm, e + r * nrm);
        };
        auto [a1, b1] = shift(a, b);
        auto [b2, c2] = shift(b, c);
        out[i] = segment_intersection(a1, b1, b2, c2);
    }
    return {std::move(out)};
}

double overlap_area(const AffineMap& A, double side) {
    if (side <= 0.0) throw GeometryError("square side must be positive");
    const ConvexPolygon s = Square{{0.0, 0.0}, side}.to_polygon();
    return area(clip(transformed(s, A), s));
}

} // namespace cantorlim
