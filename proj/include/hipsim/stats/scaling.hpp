#pragma once

#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/process/model.hpp"
#include "hipsim/stats/fitting.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hipsim {

// Hyperplane draws are materialised out to this radius at most; windows that
// need more throw WindowOverflow.
inline constexpr double kMaxSamplingRadius = 4096.0;

struct RadiusStats {
    double radius = 0.0;
    int reps = 0;
    double mean = 0.0;
    double variance = 0.0;
    double se_mean = 0.0;
    double se_variance = 0.0;
};

struct ScalingReport {
    int m = 0;
    double thin_p = 1.0;
    std::vector<RadiusStats> per_radius;
    double slope = 0.0;  // log variance vs log radius
    Interval slope_ci;   // bootstrap percentile
    double fit_r_squared = 0.0;
};

// Monte Carlo variance of the order-m intersection measure on the grown
// windows rW, with a log-log growth-exponent fit.  Counts (m = dim) grow
// with variance of order r^(2d-1), one order above the volume.  thin_p < 1
// applies independent point thinning before counting (m = dim only).
ScalingReport variance_scaling(const DirectionalModel& model, int m, const ConvexBody& w,
                               std::span<const double> radii, int reps, std::uint64_t seed,
                               int jobs = 1, double thin_p = 1.0);

// Homogeneous Poisson control at the given point intensity: same windows,
// same fit; the exponent is the volume order d.
ScalingReport poisson_control_scaling(double intensity, const ConvexBody& w,
                                      std::span<const double> radii, int reps, std::uint64_t seed,
                                      int jobs = 1);

}  // namespace hipsim
