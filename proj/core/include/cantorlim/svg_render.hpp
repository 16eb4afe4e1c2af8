#ifndef CANTORLIM_SVG_RENDER_HPP
#define CANTORLIM_SVG_RENDER_HPP

#include "cantorlim/certificate.hpp"

#include <string>
#include <vector>

namespace cantorlim {

/// Deterministic SVG of a polygon family (cylinder covers, lambda slices).
std::string render_polygons_svg(const std::vector<ConvexPolygon>& polys, const std::string& title);
std::string render_squares_svg(const std::vector<Square>& squares, const std::string& title);

/// The recurrent-set diagram: (log|alpha|, log10 kappa)-plane with the three
/// band regions shaded and the sweep's renormalization arrows drawn on top.
std::string render_certificate_svg(const BuzzardParams& p, const SweepReport& report);

} // namespace cantorlim

#endif
