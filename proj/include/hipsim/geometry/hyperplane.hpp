#pragma once

#include "hipsim/common.hpp"

#include <optional>
#include <span>

namespace hipsim {

// Hyperplane { y : <y,u> = s } with ||u|| = 1.  Canonical form fixes the sign
// ambiguity (u,s) ~ (-u,-s): the first coordinate of u with |u_i| > 1e-12 is
// positive.  All stored hyperplanes are canonical.
struct Hyperplane {
    Vec u;
    double s = 0.0;

    int dim() const { return static_cast<int>(u.size()); }
};

// Builds a canonical hyperplane from any (direction, offset) pair.
// The direction need not be normalised; it must be nonzero.
Hyperplane make_hyperplane(Vec direction, double offset);

bool is_canonical(const Hyperplane& h, double eps = 1e-12);

inline double signed_offset(const Hyperplane& h, const Vec& x)
{
    return h.u.dot(x) - h.s;
}

inline double distance_to_hyperplane(const Hyperplane& h, const Vec& x)
{
    return std::abs(signed_offset(h, x));
}

// Metric on canonical forms used for dedup and for matching detected
// hyperplanes against a reference set.
inline double canonical_distance(const Hyperplane& a, const Hyperplane& b)
{
    return (a.u - b.u).cwiseAbs().maxCoeff() + std::abs(a.s - b.s);
}

// Unit normal of the affine span of d points in R^d, computed from the
// difference vectors.  Returns nullopt when the points are affinely dependent
// relative to tol: the (d-1)-volume they span must exceed tol * prod(edge
// lengths).
std::optional<Vec> span_normal(std::span<const Vec> pts, double tol);

// Hyperplane through exactly d affinely independent points.
// Throws AffinelyDependent when the volume test fails, TooFewPoints on a
// wrong point count.
Hyperplane hyperplane_through_points(std::span<const Vec> pts, double tol = kDefaultTol);

// n >= d points are in general hyperplane position when every d-subset is
// affinely independent and all points lie on one common hyperplane (so every
// d-subset spans that same hyperplane).  Throws TooFewPoints for n < d.
bool in_general_hyperplane_position(std::span<const Vec> pts, double tol = kDefaultTol);

}  // namespace hipsim
