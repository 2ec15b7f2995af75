#pragma once

#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/process/model.hpp"
#include "hipsim/reconstruct/params.hpp"

#include <cstdint>
#include <vector>

namespace hipsim {

struct TailReport {
    int reps = 0;
    int truncated = 0;            // runs that exhausted max_radius
    std::vector<double> radii;    // stopping radii of terminated runs, ascending
    double median = 0.0;
    // log survival ~ log(c1) - c2 * s fitted on radii above the median.
    double c1_hat = 0.0;
    double c2_hat = 0.0;
    double log_fit_r_squared = 0.0;
    int fit_points = 0;
};

// Distribution of the stopping-set radius over independent reconstruction
// runs.  The upper-tail fit of the empirical survival function is linear in
// s on a log scale when the tail is exponential; c2_hat > 0 is the decay
// rate, truncated counts runs cut off by max_radius.
TailReport stopping_tail(const DirectionalModel& model, const ConvexBody& k, int reps,
                         const ReconstructionParams& params, std::uint64_t seed, int jobs = 1);

}  // namespace hipsim
