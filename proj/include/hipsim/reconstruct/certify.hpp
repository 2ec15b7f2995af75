#pragma once

#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/geometry/hyperplane.hpp"
#include "hipsim/geometry/polytope.hpp"
#include "hipsim/reconstruct/params.hpp"

#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace hipsim {

// A greedily peeled family of nested polytopes built from xi, independent of
// the distance threshold r.  `complete` means polytope_count facet-disjoint
// bounded polytopes were found, each containing K in its interior;
// `required_radius` is the smallest r at which the family certifies (max
// vertex distance to K minus the facet-scale slack).  Rebuilding is only
// needed when xi changes, so callers probing successive radii can cache it.
struct EnclosureFamily {
    std::vector<Polytope> polytopes;  // innermost first
    double required_radius = std::numeric_limits<double>::infinity();
    bool complete = false;

    bool certifies(double r) const { return complete && r >= required_radius; }
};

EnclosureFamily build_enclosure_family(std::span<const Hyperplane> xi, const ConvexBody& k,
                                       const ReconstructionParams& params = {});

// Search xi (hyperplanes disjoint from K) for polytope_count facet-disjoint
// polytopes, each containing K in its interior with every vertex within
// distance r of K.  Greedy peeling: intersect all unused halfspaces (the
// inclusion-minimal choice, so it minimises the max vertex distance), keep
// it if it certifies, remove its facets, repeat.  Sound but not complete:
// the first peel can consume facets of several alternative families (e.g. a
// square and a rotated square whose joint intersection is an octagon), in
// which case certification is simply deferred to a later stage with more
// hyperplanes.  Returns the polytopes (innermost first) or nullopt when
// certification is not yet possible.
std::optional<std::vector<Polytope>> certify_enclosure(std::span<const Hyperplane> xi,
                                                       const ConvexBody& k, double r,
                                                       const ReconstructionParams& params = {});

}  // namespace hipsim
