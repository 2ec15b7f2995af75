#pragma once

#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/process/model.hpp"

#include <cstdint>

namespace hipsim {

struct CltReport {
    int reps = 0;
    double r = 0.0;
    double mean = 0.0;
    double sd = 0.0;
    double sigma_hat = 0.0;  // sd / r^(d - 1/2), the normalised fluctuation scale
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double ad_statistic = 0.0;  // Anderson-Darling A*^2, estimated normal params
    bool reject_001 = false;
};

// Normality diagnostic for the centred, r^(d-1/2)-scaled window statistic
// Phi_m(rW): skewness, excess kurtosis, and an Anderson-Darling test against
// the fitted normal.  Degenerate (constant) samples are reported as
// rejections with an infinite statistic.
CltReport clt_diagnostic(const DirectionalModel& model, int m, const ConvexBody& w, double r,
                         int reps, std::uint64_t seed, int jobs = 1);

}  // namespace hipsim
