#pragma once

#include "hipsim/common.hpp"
#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/geometry/flat.hpp"

namespace hipsim {

// Volume of the unit k-ball.
double unit_ball_volume(int k);

// Lebesgue measure of the body (ball/box any d, polytope d = 2).
double body_volume(const ConvexBody& b);

// H^k measure of flat ∩ window for a k-flat.  Supported: k = 0 against any
// body; any k against balls; k in {1,2} against boxes/polytopes.  Throws
// UnsupportedDimension otherwise.
double flat_measure_in_window(const Flat& f, const ConvexBody& window);

// Parameter interval [t0,t1] of {anchor + t dir} inside the window (dir
// unit); empty interval returned as t0 > t1.
std::pair<double, double> clip_line_to_body(const Vec& anchor, const Vec& dir, const ConvexBody& b);

// In-plane polygon of a 2-flat clipped to a 3D body; vertices in span
// coordinates, counter-clockwise.  Empty when the section is empty.
std::vector<Vec> plane_section_polygon(const Flat& f, const ConvexBody& b);

}  // namespace hipsim
