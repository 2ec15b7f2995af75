#include "hipsim/stats/scaling.hpp"

#include "hipsim/error.hpp"
#include "hipsim/geometry/measures.hpp"
#include "hipsim/intersection/points.hpp"
#include "hipsim/process/world.hpp"
#include "hipsim/rng.hpp"
#include "hipsim/stats/parallel.hpp"
#include "hipsim/stats/summary.hpp"

#include <cmath>

namespace hipsim {

namespace {

constexpr std::uint64_t kThinStream = 0x7415;
constexpr std::uint64_t kBootStream = 0xB007;

void check_radii(std::span<const double> radii, int reps)
{
    if (radii.size() < 2) throw ConfigInvalid("variance scaling: need at least two radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw ConfigInvalid("variance scaling: radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw ConfigInvalid("variance scaling: radii must be strictly increasing");
    }
    if (reps < 100) throw ConfigInvalid("variance scaling: need at least 100 replications per radius");
}

ScalingReport finish(int m, double thin_p, std::span<const double> radii,
                     std::vector<std::vector<double>> blocks, std::uint64_t seed)
{
    ScalingReport rep;
    rep.m = m;
    rep.thin_p = thin_p;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const MomentSummary s = summarize(blocks[i]);
        rep.per_radius.push_back(RadiusStats{radii[i], static_cast<int>(s.n), s.mean, s.variance,
                                             s.se_mean, s.se_variance});
    }
    const auto est = bootstrap_variance_log_slope(blocks, radii, 1000, 0.95, mix_keys(seed, kBootStream));
    rep.slope = est.slope;
    rep.slope_ci = est.ci;
    rep.fit_r_squared = est.r_squared;
    return rep;
}

}  // namespace

ScalingReport variance_scaling(const DirectionalModel& model, int m, const ConvexBody& w,
                               std::span<const double> radii, int reps, std::uint64_t seed,
                               int jobs, double thin_p)
{
    check_radii(radii, reps);
    const int d = model.dim();
    if (m < 1 || m > d) throw ConfigInvalid("variance scaling: order m must lie in [1, dim]");
    if (!(thin_p > 0.0 && thin_p <= 1.0)) throw InvalidProbability("thinning probability in (0,1]");
    if (thin_p < 1.0 && m != d)
        throw ConfigInvalid("thinning applies to the point process only (m = dim)");
    if (scaled_body(w, radii.back()).outradius() > kMaxSamplingRadius)
        throw WindowOverflow("largest window exceeds the sampling capacity");

    std::vector<std::vector<double>> blocks(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const ConvexBody window = scaled_body(w, radii[i]);
        const double ball_radius = window.outradius();
        auto& block = blocks[i];
        block.assign(reps, 0.0);
        parallel_for(reps, jobs, [&](int j) {
            const std::uint64_t rep_seed = mix_keys(seed, i, static_cast<std::uint64_t>(j));
            WorldOracle world = sample_hitting(model, ball_radius, rep_seed);
            const auto hs = world.hitting_subset(window);
            if (m == d) {
                const auto pts = intersection_points(hs, window);
                double count = static_cast<double>(pts.points.size());
                if (thin_p < 1.0) {
                    Engine rng = stream_engine(rep_seed, kThinStream);
                    std::binomial_distribution<long> keep(static_cast<long>(count), thin_p);
                    count = static_cast<double>(keep(rng));
                }
                block[j] = count;
            } else {
                block[j] = phi_m_total(hs, m, window);
            }
        });
    }
    return finish(m, thin_p, radii, std::move(blocks), seed);
}

ScalingReport poisson_control_scaling(double intensity, const ConvexBody& w,
                                      std::span<const double> radii, int reps, std::uint64_t seed,
                                      int jobs)
{
    check_radii(radii, reps);
    if (!(intensity > 0.0)) throw ConfigInvalid("poisson control: intensity must be positive");
    if (scaled_body(w, radii.back()).outradius() > kMaxSamplingRadius)
        throw WindowOverflow("largest window exceeds the sampling capacity");

    std::vector<std::vector<double>> blocks(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double lambda = intensity * body_volume(scaled_body(w, radii[i]));
        auto& block = blocks[i];
        block.assign(reps, 0.0);
        parallel_for(reps, jobs, [&](int j) {
            Engine rng = stream_engine(mix_keys(seed, i, static_cast<std::uint64_t>(j)), 0);
            std::poisson_distribution<long> count(lambda);
            block[j] = static_cast<double>(count(rng));
        });
    }
    return finish(0, 1.0, radii, std::move(blocks), seed);
}

}  // namespace hipsim
