#include "hipsim/stats/pair_correlation.hpp"

#include "hipsim/error.hpp"
#include "hipsim/geometry/measures.hpp"
#include "hipsim/intersection/points.hpp"
#include "hipsim/process/world.hpp"
#include "hipsim/rng.hpp"
#include "hipsim/stats/parallel.hpp"
#include "hipsim/stats/scaling.hpp"
#include "hipsim/stats/summary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

namespace hipsim {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile

struct RepCounts {
    std::vector<double> pair_bins;  // ordered pairs with reference point in the analysis ball
    double ref_count = 0.0;
};

// Ordered-pair distance histogram: reference points in B(0, Ra), neighbours
// anywhere (the sampler guarantees coverage out to Ra + max_distance).
RepCounts histogram(const std::vector<Vec>& pts, double analysis_radius, double bin_width,
                    int bin_count, double max_distance)
{
    RepCounts rc;
    rc.pair_bins.assign(bin_count, 0.0);
    for (std::size_t a = 0; a < pts.size(); ++a) {
        if (pts[a].norm() > analysis_radius) continue;
        rc.ref_count += 1.0;
        for (std::size_t b = 0; b < pts.size(); ++b) {
            if (b == a) continue;
            const double dist = (pts[b] - pts[a]).norm();
            if (dist >= max_distance) continue;
            const int bin = std::min(static_cast<int>(dist / bin_width), bin_count - 1);
            rc.pair_bins[bin] += 1.0;
        }
    }
    return rc;
}

PairCorrelationReport assemble(int dim, double analysis_radius, double max_distance, int bin_count,
                               int reps, double fit_lo, double fit_hi, double tail_lo,
                               double tail_hi, bool aniso, std::uint64_t seed,
                               const std::vector<RepCounts>& counts)
{
    PairCorrelationReport rep;
    rep.reps = reps;
    rep.analysis_radius = analysis_radius;
    rep.max_distance = max_distance;
    rep.anisotropic_warning = aniso;
    rep.fit_lo = fit_lo;
    rep.fit_hi = fit_hi;
    rep.tail_lo = tail_lo;
    rep.tail_hi = tail_hi;

    const double bin_width = max_distance / bin_count;
    const double ref_volume = unit_ball_volume(dim) * std::pow(analysis_radius, dim);

    std::vector<double> refs(reps);
    for (int r = 0; r < reps; ++r) refs[r] = counts[r].ref_count;
    const double gamma = pairwise_sum(refs) / (reps * ref_volume);
    rep.gamma_hat = gamma;

    std::vector<double> ring(bin_count);
    for (int b = 0; b < bin_count; ++b) {
        const double lo = b * bin_width, hi = lo + bin_width;
        ring[b] = unit_ball_volume(dim) * (std::pow(hi, dim) - std::pow(lo, dim));
    }

    // Per-replication bin estimates with the pooled intensity, so the CI
    // reflects realization noise, not intensity-ratio noise.
    const double denom_scale = gamma * gamma * ref_volume;
    std::vector<std::vector<double>> per_rep(bin_count, std::vector<double>(reps));
    for (int b = 0; b < bin_count; ++b) {
        for (int r = 0; r < reps; ++r)
            per_rep[b][r] = counts[r].pair_bins[b] / (denom_scale * ring[b]);
    }
    for (int b = 0; b < bin_count; ++b) {
        const MomentSummary s = summarize(per_rep[b]);
        PairCorrelationBin bin;
        bin.r_lo = b * bin_width;
        bin.r_hi = bin.r_lo + bin_width;
        bin.mid = bin.r_lo + 0.5 * bin_width;
        bin.rho = s.mean;
        bin.ci_lo = s.mean - kZ99 * s.se_mean;
        bin.ci_hi = s.mean + kZ99 * s.se_mean;
        rep.bins.push_back(bin);
    }

    // Decay fit over bin means from a replication index set (identity for
    // the point estimate, resampled for the bootstrap).
    const auto fit_over = [&](const std::vector<int>& which) -> std::optional<double> {
        std::vector<double> lx, ly;
        for (int b = 0; b < bin_count; ++b) {
            const double mid = rep.bins[b].mid;
            if (mid < fit_lo || mid > fit_hi) continue;
            double acc = 0.0;
            for (int r : which) acc += per_rep[b][r];
            const double rho = acc / which.size();
            if (rho <= 1.0) continue;
            lx.push_back(std::log(mid));
            ly.push_back(std::log(rho - 1.0));
        }
        if (lx.size() < 3) return std::nullopt;
        return fit_line(lx, ly).slope;
    };

    std::vector<int> all(reps);
    for (int r = 0; r < reps; ++r) all[r] = r;
    if (const auto point = fit_over(all)) {
        rep.decay_exponent = *point;
        std::vector<double> lxc;
        for (int b = 0; b < bin_count; ++b) {
            const double mid = rep.bins[b].mid;
            if (mid >= fit_lo && mid <= fit_hi && rep.bins[b].rho > 1.0) lxc.push_back(mid);
        }
        rep.fit_bins = static_cast<int>(lxc.size());

        constexpr int kRounds = 400;
        std::vector<double> slopes;
        slopes.reserve(kRounds);
        for (int round = 0; round < kRounds; ++round) {
            Engine rng = stream_engine(seed, 0xDECA, static_cast<std::uint64_t>(round));
            std::uniform_int_distribution<int> pick(0, reps - 1);
            std::vector<int> which(reps);
            for (auto& w : which) w = pick(rng);
            if (const auto s = fit_over(which)) slopes.push_back(*s);
        }
        if (slopes.size() >= 40) {
            std::sort(slopes.begin(), slopes.end());
            rep.decay_ci.lo = slopes[static_cast<std::size_t>(0.025 * (slopes.size() - 1))];
            rep.decay_ci.hi = slopes[static_cast<std::size_t>(std::ceil(0.975 * (slopes.size() - 1)))];
        }
    }

    // Flatness of the far bins: per-rep mean over the tail range.
    std::vector<int> tail_bins;
    for (int b = 0; b < bin_count; ++b) {
        if (rep.bins[b].mid >= tail_lo && rep.bins[b].mid <= tail_hi) tail_bins.push_back(b);
    }
    if (!tail_bins.empty()) {
        std::vector<double> per_rep_tail(reps, 0.0);
        for (int r = 0; r < reps; ++r) {
            double acc = 0.0;
            for (int b : tail_bins) acc += per_rep[b][r];
            per_rep_tail[r] = acc / tail_bins.size();
        }
        const MomentSummary s = summarize(per_rep_tail);
        rep.tail_mean = s.mean;
        rep.tail_ci.lo = s.mean - kZ99 * s.se_mean;
        rep.tail_ci.hi = s.mean + kZ99 * s.se_mean;
    }
    return rep;
}

PairCorrelationReport correlate(int dim, double analysis_radius, int bin_count, double max_distance,
                                int reps, std::uint64_t seed, double fit_lo, double fit_hi,
                                double tail_lo, double tail_hi, int jobs, bool aniso,
                                const std::function<std::vector<Vec>(std::uint64_t)>& sample_points)
{
    if (bin_count < 1 || !(max_distance > 0.0) || !(analysis_radius > 0.0))
        throw ConfigInvalid("pair correlation: radius, bins and max distance must be positive");
    if (reps < 2) throw ConfigInvalid("pair correlation: need at least 2 replications");
    if (analysis_radius + max_distance > kMaxSamplingRadius)
        throw WindowOverflow("pair correlation: window exceeds the sampling capacity");

    const double bin_width = max_distance / bin_count;
    std::vector<RepCounts> counts(reps);
    parallel_for(reps, jobs, [&](int r) {
        const auto pts = sample_points(mix_keys(seed, static_cast<std::uint64_t>(r)));
        counts[r] = histogram(pts, analysis_radius, bin_width, bin_count, max_distance);
    });
    return assemble(dim, analysis_radius, max_distance, bin_count, reps, fit_lo, fit_hi, tail_lo,
                    tail_hi, aniso, seed, counts);
}

}  // namespace

PairCorrelationReport pair_correlation(const DirectionalModel& model, double analysis_radius,
                                       int bin_count, double max_distance, int reps,
                                       std::uint64_t seed, double fit_lo, double fit_hi,
                                       double tail_lo, double tail_hi, int jobs)
{
    const int d = model.dim();
    const double sample_radius = analysis_radius + max_distance;
    const auto sampler = [&](std::uint64_t rep_seed) {
        WorldOracle world = sample_hitting(model, sample_radius, rep_seed);
        const ConvexBody ball = ConvexBody::ball(Vec::Zero(d), sample_radius);
        const auto pts = intersection_points(world.hyperplanes(), ball);
        std::vector<Vec> out;
        out.reserve(pts.points.size());
        for (const auto& p : pts.points) out.push_back(p.x);
        return out;
    };
    return correlate(d, analysis_radius, bin_count, max_distance, reps, seed, fit_lo, fit_hi,
                     tail_lo, tail_hi, jobs, !model.is_isotropic(), sampler);
}

PairCorrelationReport pair_correlation_poisson(double intensity, int dim, double analysis_radius,
                                               int bin_count, double max_distance, int reps,
                                               std::uint64_t seed, double fit_lo, double fit_hi,
                                               double tail_lo, double tail_hi, int jobs)
{
    if (!(intensity > 0.0)) throw ConfigInvalid("pair correlation: intensity must be positive");
    const double sample_radius = analysis_radius + max_distance;
    const auto sampler = [&](std::uint64_t rep_seed) {
        Engine rng = stream_engine(rep_seed, 0);
        const double volume = unit_ball_volume(dim) * std::pow(sample_radius, dim);
        std::poisson_distribution<long> count(intensity * volume);
        const long n = count(rng);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<Vec> pts;
        pts.reserve(n);
        for (long i = 0; i < n; ++i) {
            Vec u(dim);
            do {
                for (int c = 0; c < dim; ++c) u[c] = gauss(rng);
            } while (u.norm() == 0.0);
            u *= sample_radius * std::pow(unit(rng), 1.0 / dim) / u.norm();
            pts.push_back(u);
        }
        return pts;
    };
    return correlate(dim, analysis_radius, bin_count, max_distance, reps, seed, fit_lo, fit_hi,
                     tail_lo, tail_hi, jobs, false, sampler);
}

}  // namespace hipsim
