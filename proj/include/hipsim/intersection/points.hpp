#pragma once

#include "hipsim/common.hpp"
#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/geometry/hyperplane.hpp"

#include <span>
#include <vector>

namespace hipsim {

// Intersection point of d hyperplanes; parents is the sorted index tuple
// into the generating hyperplane list.
struct IntersectionPoint {
    Vec x;
    std::vector<int> parents;
};

struct IntersectionPointSet {
    std::vector<IntersectionPoint> points;
    std::size_t near_singular_skipped = 0;
};

// All window-hitting intersection points over d-subsets, in lexicographic
// parent-tuple order.  Near-singular subsets are skipped and tallied, never
// errors.
IntersectionPointSet intersection_points(std::span<const Hyperplane> hs, const ConvexBody& window,
                                         double tol = kDefaultTol);

// One m-subset contribution to the intersection measure of order m.
struct PhiContribution {
    std::vector<int> parents;
    double measure = 0.0;
};

// Sample of Phi_m(window): the H^{d-m} measure of all m-wise intersection
// flats inside the window, summed over unordered m-subsets.
struct IntersectionMeasureSample {
    int m = 0;
    double total = 0.0;
    std::vector<PhiContribution> contributions;  // strictly positive entries
    std::size_t degenerate_skipped = 0;
};

IntersectionMeasureSample phi_m_measure(std::span<const Hyperplane> hs, int m, const ConvexBody& window,
                                        double tol = kDefaultTol);

// Total only; avoids building the contribution list on hot estimator paths.
double phi_m_total(std::span<const Hyperplane> hs, int m, const ConvexBody& window,
                   double tol = kDefaultTol);

}  // namespace hipsim
