#include "hipsim/stats/tail.hpp"

#include "hipsim/error.hpp"
#include "hipsim/intersection/annulus.hpp"
#include "hipsim/process/world.hpp"
#include "hipsim/reconstruct/run.hpp"
#include "hipsim/rng.hpp"
#include "hipsim/stats/fitting.hpp"
#include "hipsim/stats/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace hipsim {

TailReport stopping_tail(const DirectionalModel& model, const ConvexBody& k, int reps,
                         const ReconstructionParams& params, std::uint64_t seed, int jobs)
{
    if (reps < 500) throw ConfigInvalid("stopping tail: need at least 500 replications");

    TailReport rep;
    rep.reps = reps;
    std::vector<double> radii(reps, -1.0);  // -1 marks truncation
    parallel_for(reps, jobs, [&](int i) {
        WorldOracle world(model, mix_keys(seed, static_cast<std::uint64_t>(i)));
        OraclePointSource src(world, k, params.gp_tol);
        const auto res = run_reconstruction(src, k, params);
        if (res.terminated) radii[i] = res.stopping_radius;
    });

    for (double r : radii) {
        if (r < 0.0)
            ++rep.truncated;
        else
            rep.radii.push_back(r);
    }
    std::sort(rep.radii.begin(), rep.radii.end());

    const std::size_t n = rep.radii.size();
    if (n < 10) return rep;  // not enough mass for any fit
    rep.median = n % 2 == 1 ? rep.radii[n / 2] : 0.5 * (rep.radii[n / 2 - 1] + rep.radii[n / 2]);

    // Empirical survival above the median; the last order statistic has
    // survival 0 and is excluded.
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n - 1; ++i) {
        const double survival = 1.0 - static_cast<double>(i + 1) / static_cast<double>(n);
        if (rep.radii[i] <= rep.median) continue;
        xs.push_back(rep.radii[i]);
        ys.push_back(std::log(survival));
    }
    rep.fit_points = static_cast<int>(xs.size());
    if (xs.size() >= 3) {
        const LineFit fit = fit_line(xs, ys);
        rep.c2_hat = -fit.slope;
        rep.c1_hat = std::exp(fit.intercept);
        rep.log_fit_r_squared = fit.r_squared;
    }
    return rep;
}

}  // namespace hipsim
