#pragma once

#include "hipsim/common.hpp"
#include "hipsim/geometry/hyperplane.hpp"

#include <vector>

namespace hipsim {

// Halfspace { x : <x,normal> <= offset } with unit normal.
struct Halfspace {
    Vec normal;
    double offset = 0.0;

    int dim() const { return static_cast<int>(normal.size()); }
    double slack(const Vec& x) const { return offset - normal.dot(x); }
};

inline Halfspace make_halfspace(Vec normal, double offset)
{
    const double n = normal.norm();
    return Halfspace{normal / n, offset / n};
}

// Intersection of finitely many halfspaces.  vertices is the full vertex set
// when bounded (2D: in boundary-walk order).  active lists input indices that
// contribute a facet.
struct Polytope {
    std::vector<Halfspace> halfspaces;
    std::vector<Vec> vertices;
    bool bounded = false;
    std::vector<int> active;
};

// Vertex enumeration for d in {2,3}: 2D via an incremental boundary walk,
// 3D via the polar dual convex hull around a Chebyshev centre.
// Throws EmptyIntersection when infeasible, UnsupportedDimension otherwise.
Polytope halfspace_polytope(const std::vector<Halfspace>& hs, double tol = kDefaultTol);

}  // namespace hipsim
