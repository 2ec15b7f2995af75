#include "hipsim/stats/randomize.hpp"

#include "hipsim/error.hpp"
#include "hipsim/geometry/flat.hpp"
#include "hipsim/geometry/measures.hpp"
#include "hipsim/process/world.hpp"
#include "hipsim/rng.hpp"
#include "hipsim/stats/parallel.hpp"
#include "hipsim/stats/summary.hpp"

#include <cmath>
#include <numbers>

namespace hipsim {

std::vector<Vec> thin(std::span<const Vec> points, double p, std::uint64_t seed)
{
    if (!(p > 0.0 && p <= 1.0)) throw InvalidProbability("thinning probability must lie in (0,1]");
    std::vector<Vec> out;
    Engine rng = stream_engine(seed, 0);
    std::bernoulli_distribution keep(p);
    for (const Vec& x : points) {
        if (keep(rng)) out.push_back(x);
    }
    return out;
}

std::vector<Vec> cox_multiplicity_sample(std::span<const Vec> points, std::uint64_t seed)
{
    std::vector<Vec> out;
    Engine rng = stream_engine(seed, 0);
    std::poisson_distribution<int> multiplicity(1.0);
    for (const Vec& x : points) {
        const int m = multiplicity(rng);
        for (int i = 0; i < m; ++i) out.push_back(x);
    }
    return out;
}

std::vector<Vec> cox_flat_sample(std::span<const Hyperplane> hs, const IntersectionMeasureSample& sample,
                                 const ConvexBody& window, std::uint64_t seed, double tol)
{
    std::vector<Vec> out;
    Engine rng = stream_engine(seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Hyperplane> sub;

    for (const auto& contrib : sample.contributions) {
        sub.clear();
        for (int i : contrib.parents) sub.push_back(hs[i]);
        const auto flat = intersect_hyperplanes(sub, tol);
        if (!flat || flat->degenerate) continue;

        std::poisson_distribution<int> count(contrib.measure);
        const int n = count(rng);
        if (n == 0) continue;

        if (flat->dim == 0) {
            for (int i = 0; i < n; ++i) out.push_back(flat->anchor);
        } else if (flat->dim == 1) {
            const auto [t0, t1] = clip_line_to_body(flat->anchor, flat->directions[0], window);
            if (t0 > t1) continue;
            for (int i = 0; i < n; ++i)
                out.push_back(flat->anchor + (t0 + (t1 - t0) * unit(rng)) * flat->directions[0]);
        } else if (flat->dim == 2 && flat->ambient_dim() == 3 &&
                   window.kind() == ConvexBody::Kind::Ball) {
            // The section of a ball is a disk in span coordinates; sample it
            // exactly (the polygon clip below only sees bounding halfspaces,
            // which a ball does not have).
            const Vec rel = window.ball_centre() - flat->anchor;
            const double cx = rel.dot(flat->directions[0]);
            const double cy = rel.dot(flat->directions[1]);
            const double dist2 = rel.squaredNorm() - cx * cx - cy * cy;
            const double rho2 = window.ball_radius() * window.ball_radius() - dist2;
            if (!(rho2 > 0.0)) continue;
            const double rho = std::sqrt(rho2);
            for (int i = 0; i < n; ++i) {
                const double a = rho * std::sqrt(unit(rng));
                const double phi = 2.0 * std::numbers::pi * unit(rng);
                const double coords[2] = {cx + a * std::cos(phi), cy + a * std::sin(phi)};
                out.push_back(flat_point(*flat, coords));
            }
        } else if (flat->dim == 2 && flat->ambient_dim() == 3) {
            const auto poly = plane_section_polygon(*flat, window);
            if (poly.size() < 3) continue;
            // Fan triangulation; triangle picked by area, point by the
            // square-root barycentric trick.
            std::vector<double> cum;
            double total = 0.0;
            for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
                const Vec e1 = poly[i] - poly[0];
                const Vec e2 = poly[i + 1] - poly[0];
                total += 0.5 * std::abs(e1[0] * e2[1] - e1[1] * e2[0]);
                cum.push_back(total);
            }
            if (!(total > 0.0)) continue;
            for (int i = 0; i < n; ++i) {
                const double pickv = unit(rng) * total;
                std::size_t t = 0;
                while (t + 1 < cum.size() && cum[t] < pickv) ++t;
                const double a = std::sqrt(unit(rng));
                const double b = unit(rng);
                const Vec in_plane =
                    (1.0 - a) * poly[0] + a * (1.0 - b) * poly[t + 1] + a * b * poly[t + 2];
                const double coords[2] = {in_plane[0], in_plane[1]};
                out.push_back(flat_point(*flat, coords));
            }
        } else {
            throw UnsupportedDimension("cox_flat_sample: flats of dimension > 2 not supported");
        }
    }
    return out;
}

namespace {

VarianceIdentity finish_identity(const std::vector<double>& phi, const std::vector<double>& randomized,
                                 double coef_var, double coef_mean)
{
    const MomentSummary sp = summarize(phi);
    const MomentSummary sr = summarize(randomized);
    VarianceIdentity out;
    out.reps = static_cast<int>(phi.size());
    out.mean_phi = sp.mean;
    out.var_phi = sp.variance;
    out.var_randomized = sr.variance;
    out.predicted = coef_var * sp.variance + coef_mean * sp.mean;
    out.rel_err = std::abs(out.var_randomized - out.predicted) / std::max(out.predicted, 1e-300);
    return out;
}

}  // namespace

VarianceIdentity cox_variance_identity(const DirectionalModel& model, int m, const ConvexBody& b,
                                       int reps, std::uint64_t seed, int jobs)
{
    const int d = model.dim();
    if (m < 1 || m > d) throw ConfigInvalid("cox identity: order m must lie in [1, dim]");
    if (reps < 100) throw ConfigInvalid("cox identity: need at least 100 replications");

    const double radius = b.outradius();
    std::vector<double> phi(reps), psi(reps);
    parallel_for(reps, jobs, [&](int i) {
        const std::uint64_t rep_seed = mix_keys(seed, static_cast<std::uint64_t>(i));
        WorldOracle world = sample_hitting(model, radius, rep_seed);
        const auto hs = world.hitting_subset(b);
        Engine rng = stream_engine(rep_seed, 0xC0C5);
        if (m == d) {
            const auto pts = intersection_points(hs, b);
            phi[i] = static_cast<double>(pts.points.size());
            std::poisson_distribution<int> multiplicity(1.0);
            long total = 0;
            for (std::size_t p = 0; p < pts.points.size(); ++p) total += multiplicity(rng);
            psi[i] = static_cast<double>(total);
        } else {
            const double measure = phi_m_total(hs, m, b);
            phi[i] = measure;
            std::poisson_distribution<long> count(measure);
            psi[i] = measure > 0.0 ? static_cast<double>(count(rng)) : 0.0;
        }
    });
    // V[Psi(B)] = E[Phi(B)] + V[Phi(B)]
    return finish_identity(phi, psi, 1.0, 1.0);
}

VarianceIdentity thinning_variance_identity(const DirectionalModel& model, double p,
                                            const ConvexBody& b, int reps, std::uint64_t seed,
                                            int jobs)
{
    if (!(p > 0.0 && p <= 1.0)) throw InvalidProbability("thinning probability must lie in (0,1]");
    if (reps < 100) throw ConfigInvalid("thinning identity: need at least 100 replications");

    const double radius = b.outradius();
    std::vector<double> phi(reps), thinned(reps);
    parallel_for(reps, jobs, [&](int i) {
        const std::uint64_t rep_seed = mix_keys(seed, static_cast<std::uint64_t>(i));
        WorldOracle world = sample_hitting(model, radius, rep_seed);
        const auto hs = world.hitting_subset(b);
        const auto pts = intersection_points(hs, b);
        std::vector<Vec> xs;
        xs.reserve(pts.points.size());
        for (const auto& q : pts.points) xs.push_back(q.x);
        phi[i] = static_cast<double>(xs.size());
        thinned[i] = static_cast<double>(thin(xs, p, mix_keys(rep_seed, 0x791)).size());
    });
    // V[Phi_p(B)] = p^2 V[Phi(B)] + p(1-p) E[Phi(B)]
    return finish_identity(phi, thinned, p * p, p * (1.0 - p));
}

}  // namespace hipsim
