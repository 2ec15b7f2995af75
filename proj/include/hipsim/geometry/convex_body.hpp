#pragma once

#include "hipsim/common.hpp"
#include "hipsim/geometry/hyperplane.hpp"
#include "hipsim/geometry/polytope.hpp"

#include <vector>

namespace hipsim {

// Convex test body / observation window: ball, axis-aligned box, or bounded
// H-polytope.  Polytope bodies are verified bounded and non-empty at
// construction (vertex enumeration, so d in {2,3} for that variant).
class ConvexBody {
public:
    enum class Kind { Ball, Box, Polytope };

    static ConvexBody ball(Vec centre, double radius);
    static ConvexBody box(Vec lo, Vec hi);
    static ConvexBody polytope(std::vector<Halfspace> hs, double tol = kDefaultTol);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    // h_K(u) = sup { <x,u> : x in K }; u need not be normalised.
    double support(const Vec& u) const;
    bool contains(const Vec& x, double slack = 0.0) const;
    // d(x, K) = min { |y - x| : y in K }.
    double distance(const Vec& x) const;
    // Radius of the smallest ball centred at the origin containing K.
    double outradius() const;
    // A point in the interior (centre / midpoint / vertex centroid).
    Vec centre_hint() const;

    // Ball accessors (Kind::Ball only).
    const Vec& ball_centre() const { return centre_; }
    double ball_radius() const { return radius_; }

    // Bounding halfspaces: box and polytope variants.
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    // Vertex set: box and polytope variants.
    const std::vector<Vec>& vertices() const { return vertices_; }

private:
    ConvexBody() = default;

    Kind kind_ = Kind::Ball;
    int dim_ = 0;
    Vec centre_;      // ball
    double radius_ = 0.0;
    Vec lo_, hi_;     // box
    std::vector<Halfspace> halfspaces_;
    std::vector<Vec> vertices_;
};

// The dilated body factor*K (factor > 0); used for growing observation
// windows rW.
ConvexBody scaled_body(const ConvexBody& k, double factor);

// H and K intersect iff -h_K(-u) <= s <= h_K(u); slack loosens both ends.
bool hits(const ConvexBody& k, const Hyperplane& h, double slack = 0.0);

// The halfspace bounded by H that contains K.  Requires H and K disjoint.
Halfspace halfspace_containing(const Hyperplane& h, const ConvexBody& k);

// Projection of x onto the convex hull of a small vertex set; exact through
// enumeration of affinely independent support subsets.
double distance_to_hull(const std::vector<Vec>& vertices, const Vec& x);

// true iff K lies in the interior of P and every vertex of P is within
// distance r of K (so the whole boundary of P lies in the closed r-shell
// around K).  Throws Unbounded for unbounded P.
bool enclosure_checks(const Polytope& p, const ConvexBody& k, double r, double tol = kDefaultTol);

}  // namespace hipsim
