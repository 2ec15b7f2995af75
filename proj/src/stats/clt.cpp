#include "hipsim/stats/clt.hpp"

#include "hipsim/error.hpp"
#include "hipsim/intersection/points.hpp"
#include "hipsim/process/world.hpp"
#include "hipsim/rng.hpp"
#include "hipsim/stats/fitting.hpp"
#include "hipsim/stats/parallel.hpp"
#include "hipsim/stats/scaling.hpp"
#include "hipsim/stats/summary.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace hipsim {

CltReport clt_diagnostic(const DirectionalModel& model, int m, const ConvexBody& w, double r,
                         int reps, std::uint64_t seed, int jobs)
{
    const int d = model.dim();
    if (m < 1 || m > d) throw ConfigInvalid("clt diagnostic: order m must lie in [1, dim]");
    if (reps < 500) throw ConfigInvalid("clt diagnostic: need at least 500 replications");
    const ConvexBody window = scaled_body(w, r);
    if (window.outradius() > kMaxSamplingRadius)
        throw WindowOverflow("clt diagnostic: window exceeds the sampling capacity");

    const double ball_radius = window.outradius();
    std::vector<double> xs(reps);
    parallel_for(reps, jobs, [&](int i) {
        const std::uint64_t rep_seed = mix_keys(seed, static_cast<std::uint64_t>(i));
        WorldOracle world = sample_hitting(model, ball_radius, rep_seed);
        const auto hs = world.hitting_subset(window);
        if (m == d) {
            xs[i] = static_cast<double>(intersection_points(hs, window).points.size());
        } else {
            xs[i] = phi_m_total(hs, m, window);
        }
    });

    const MomentSummary s = summarize(xs);
    CltReport rep;
    rep.reps = reps;
    rep.r = r;
    rep.mean = s.mean;
    rep.sd = std::sqrt(s.variance);
    rep.sigma_hat = rep.sd / std::pow(r, d - 0.5);
    rep.skewness = s.skewness;
    rep.excess_kurtosis = s.excess_kurtosis;
    if (!(s.variance > 0.0)) {
        rep.ad_statistic = std::numeric_limits<double>::infinity();
        rep.reject_001 = true;
        return rep;
    }
    rep.ad_statistic = anderson_darling_normal(xs);
    rep.reject_001 = rep.ad_statistic > kAdCritical01;
    return rep;
}

}  // namespace hipsim
