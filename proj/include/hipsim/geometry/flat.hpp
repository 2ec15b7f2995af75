#pragma once

#include "hipsim/common.hpp"
#include "hipsim/geometry/hyperplane.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hipsim {

// Affine flat of dimension k in R^d: anchor + span(directions).
// anchor is the minimum-norm point of the flat; directions are orthonormal.
// degenerate marks flats produced from a rank-deficient (but consistent)
// hyperplane system.
struct Flat {
    int dim = 0;
    Vec anchor;
    std::vector<Vec> directions;
    bool degenerate = false;

    int ambient_dim() const { return static_cast<int>(anchor.size()); }
};

// Intersection of 1 <= m <= d hyperplanes.  nullopt when the system is
// inconsistent (empty intersection); otherwise a flat of dimension d - rank.
std::optional<Flat> intersect_hyperplanes(std::span<const Hyperplane> hs, double tol = kDefaultTol);

// Euclidean distance from x to the flat.
double distance_to_flat(const Flat& f, const Vec& x);

// Point of the flat at the given span coordinates.
Vec flat_point(const Flat& f, std::span<const double> coords);

}  // namespace hipsim
