#pragma once

#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/intersection/annulus.hpp"
#include "hipsim/reconstruct/params.hpp"

namespace hipsim {

// Stopping-set reconstruction.  Consumes intersection points from `src` one
// at a time in increasing distance-to-K order; after each point, detects
// hyperplanes supported by 2d-1 observed points in general hyperplane
// position, splits them into those missing K (certification input) and those
// hitting K (the output), and stops once polytope_count facet-disjoint
// certified enclosures exist.  On termination chi equals the hyperplanes of
// the underlying process hitting K almost surely.
//
// Distances are almost surely distinct; should ties occur (hand-built
// fixtures), tied points are folded into one stage record.
//
// With early_exit set, the run also stops as soon as one certified enclosure
// has no observed point on its boundary away from its vertices: no process
// hyperplane can then cross into K, so chi is empty by certificate.
ReconstructionResult run_reconstruction(PointSource& src, const ConvexBody& k,
                                        const ReconstructionParams& params = {});

}  // namespace hipsim
