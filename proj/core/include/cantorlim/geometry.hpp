#ifndef CANTORLIM_GEOMETRY_HPP
#define CANTORLIM_GEOMETRY_HPP

#include <complex>
#include <stdexcept>
#include <vector>

namespace cantorlim {

using Complex = std::complex<double>;

/// z -> alpha*z + beta on C. Conformal linear part (alpha != 0 for inverses).
struct AffineMap {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};

    Complex operator()(Complex z) const { return alpha * z + beta; }
    static AffineMap identity() { return {}; }
    static AffineMap translation(Complex b) { return {Complex{1.0, 0.0}, b}; }
};

/// (f o g)(z) = f(g(z))
AffineMap compose(const AffineMap& f, const AffineMap& g);
AffineMap invert(const AffineMap& f);

/// sup-distance of the two maps over the disk |z| <= radius
double affine_distance(const AffineMap& f, const AffineMap& g, double radius);

/// Strictly convex polygon, vertices counterclockwise. An empty vertex list
/// denotes the empty region (the result of a vanishing clip).
struct ConvexPolygon {
    std::vector<Complex> vertices;
    bool empty() const { return vertices.empty(); }
};

struct Square {
    Complex center{0.0, 0.0};
    double side = 1.0;
    ConvexPolygon to_polygon() const;
    bool contains(Complex z, double tol = 0.0) const;
};

double area(const ConvexPolygon& p);
double diameter(const ConvexPolygon& p);
Complex centroid(const ConvexPolygon& p);
ConvexPolygon transformed(const ConvexPolygon& p, const AffineMap& f);

/// Intersection of convex polygons (Sutherland-Hodgman). Degenerate results
/// (area ~ 0) come back with whatever contact vertices survive; use
/// polygons_touch for contact decisions.
ConvexPolygon clip(const ConvexPolygon& subject, const ConvexPolygon& clip_region);

/// Separation distance between convex polygons: 0 when they touch or overlap.
double polygon_distance(const ConvexPolygon& p, const ConvexPolygon& q);
bool polygons_touch(const ConvexPolygon& p, const ConvexPolygon& q, double tol = 1e-12);

bool polygon_contains_point(const ConvexPolygon& p, Complex z, double tol = 0.0);
/// inner subset outer, tested with tolerance `tol` (outward slack of outer).
bool polygon_contains(const ConvexPolygon& outer, const ConvexPolygon& inner, double tol = 0.0);

ConvexPolygon convex_hull(std::vector<Complex> points);
/// Outward offset of a convex polygon by r >= 0 (edges shifted, corners mitred).
ConvexPolygon offset_outward(const ConvexPolygon& p, double r);

/// area( S(0;side) ∩ A(S(0;side)) )
double overlap_area(const AffineMap& A, double side);

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace cantorlim

#endif
