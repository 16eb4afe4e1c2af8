#include "cantorlim/svg_render.hpp"

#include "cantorlim/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cantorlim {

namespace {

// fixed-precision coordinate text keeps the output byte-stable
std::string fmt(double v) {
    if (std::abs(v) < 1e-12) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

std::string render_polygons_svg(const std::vector<ConvexPolygon>& polys, const std::string& title) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : polys)
        for (const auto& z : p.vertices) {
            xmin = std::min(xmin, z.real());
            xmax = std::max(xmax, z.real());
            ymin = std::min(ymin, z.imag());
            ymax = std::max(ymax, z.imag());
        }
    if (polys.empty()) { xmin = ymin = -1.0; xmax = ymax = 1.0; }
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
    xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;

    const double scale = 800.0 / std::max(xmax - xmin, ymax - ymin);
    const double w = (xmax - xmin) * scale, h = (ymax - ymin) * scale;
    auto X = [&](double x) { return (x - xmin) * scale; };
    auto Y = [&](double y) { return h - (y - ymin) * scale; }; // y-up world

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
        << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
    svg << "<title>" << title << "</title>\n";
    for (const auto& p : polys) {
        svg << "<polygon points=\"";
        for (std::size_t i = 0; i < p.vertices.size(); ++i) {
            if (i) svg << " ";
            svg << fmt(X(p.vertices[i].real())) << "," << fmt(Y(p.vertices[i].imag()));
        }
        svg << "\" fill=\"#4477aa\" fill-opacity=\"0.35\" stroke=\"#223355\" stroke-width=\"0.4\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_squares_svg(const std::vector<Square>& squares, const std::string& title) {
    std::vector<ConvexPolygon> polys;
    polys.reserve(squares.size());
    for (const auto& s : squares) polys.push_back(s.to_polygon());
    return render_polygons_svg(polys, title);
}

std::string render_certificate_svg(const BuzzardParams& p, const SweepReport& report) {
    const double ann_lo = 0.5 * std::log(p.c_prime);
    const double ann_hi = -ann_lo;
    const double band_lo = 0.5 * std::log(p.q());
    const double band_hi = -band_lo;
    const double ky_lo = std::log10(p.kappa0) - 0.5; // log10 kappa axis
    const double ky_hi = std::log10(0.5) + 0.3;

    const double W = 900.0, H = 540.0, m = 60.0;
    auto X = [&](double lr) { return m + (lr - ann_lo) / (ann_hi - ann_lo) * (W - 2 * m); };
    auto Y = [&](double lk) { return H - m - (lk - ky_lo) / (ky_hi - ky_lo) * (H - 2 * m); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << "\" height=\"" << fmt(H)
        << "\" viewBox=\"0 0 " << fmt(W) << " " << fmt(H) << "\">\n";
    svg << "<title>recurrent compact set</title>\n";

    // band regions: kappa >= threshold within each |alpha| band
    struct Region { double lo, hi, threshold; const char* color; const char* name; };
    const Region regions[3] = {
        {ann_lo, band_lo, p.kappa2, "#cc6677", "Lminus"},
        {band_lo, band_hi, p.kappa0, "#44aa77", "Lzero"},
        {band_hi, ann_hi, p.kappa2, "#cc6677", "Lplus"},
    };
    for (const auto& r : regions) {
        if (!(r.hi > r.lo)) continue;
        const double y_top = Y(ky_hi), y_thr = Y(std::log10(r.threshold));
        svg << "<rect class=\"" << r.name << "\" x=\"" << fmt(X(r.lo)) << "\" y=\"" << fmt(y_top)
            << "\" width=\"" << fmt(X(r.hi) - X(r.lo)) << "\" height=\"" << fmt(y_thr - y_top)
            << "\" fill=\"" << r.color << "\" fill-opacity=\"0.30\" stroke=\"none\"/>\n";
    }
    // band boundary lines
    for (double lr : {ann_lo, band_lo, band_hi, ann_hi})
        svg << "<line x1=\"" << fmt(X(lr)) << "\" y1=\"" << fmt(Y(ky_lo)) << "\" x2=\"" << fmt(X(lr))
            << "\" y2=\"" << fmt(Y(ky_hi)) << "\" stroke=\"#333333\" stroke-width=\"0.8\"/>\n";
    // axes
    svg << "<line x1=\"" << fmt(m) << "\" y1=\"" << fmt(H - m) << "\" x2=\"" << fmt(W - m)
        << "\" y2=\"" << fmt(H - m) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << fmt(m) << "\" y1=\"" << fmt(H - m) << "\" x2=\"" << fmt(m) << "\" y2=\""
        << fmt(m) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << fmt(W / 2) << "\" y=\"" << fmt(H - m / 3)
        << "\" font-size=\"14\" text-anchor=\"middle\">log |alpha|</text>\n";
    svg << "<text x=\"" << fmt(m / 3) << "\" y=\"" << fmt(H / 2)
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 " << fmt(m / 3) << " "
        << fmt(H / 2) << ")\">log10 kappa</text>\n";

    // renormalization arrows from the sampled orbits
    svg << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
           "markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" "
           "fill=\"#202020\"/></marker></defs>\n";
    for (const auto& a : report.arrows) {
        const double k_from = std::max(a.kappa_from, p.kappa0 * 0.5);
        const double k_to = std::max(a.kappa_to, p.kappa0 * 0.5);
        svg << "<line class=\"orbit\" x1=\"" << fmt(X(a.log_alpha_from)) << "\" y1=\""
            << fmt(Y(std::log10(k_from))) << "\" x2=\"" << fmt(X(a.log_alpha_to)) << "\" y2=\""
            << fmt(Y(std::log10(k_to)))
            << "\" stroke=\"#202020\" stroke-width=\"0.9\" marker-end=\"url(#arrow)\"/>\n";
    }
    // [Id, Id]: log|alpha| = 0, kappa = 1/2
    svg << "<circle cx=\"" << fmt(X(0.0)) << "\" cy=\"" << fmt(Y(std::log10(0.5)))
        << "\" r=\"4\" fill=\"#000000\"/>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace cantorlim
