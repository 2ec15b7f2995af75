#include "hipsim/reconstruct/run.hpp"

#include "hipsim/error.hpp"
#include "hipsim/reconstruct/certify.hpp"
#include "hipsim/reconstruct/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hipsim {

namespace {

void validate(const ReconstructionParams& p, const ConvexBody& k, double budget)
{
    if (!(p.incident_tol > 0.0) || !(p.gp_tol > 0.0))
        throw ConfigInvalid("reconstruction tolerances must be positive");
    if (p.max_radius < 0.0 || p.polytope_count < 0)
        throw ConfigInvalid("max_radius and polytope_count must be nonnegative (0 = default)");
    if (!(budget > 0.0)) throw ConfigInvalid("resolved max_radius must be positive");
    if (k.outradius() > budget)
        throw ConfigInvalid("K extends beyond max_radius; enlarge the budget");
}

bool same_hyperplanes(const std::vector<Hyperplane>& a, const std::vector<Hyperplane>& b)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].s != b[i].s) return false;
        for (int j = 0; j < a[i].u.size(); ++j) {
            if (a[i].u[j] != b[i].u[j]) return false;
        }
    }
    return true;
}

// True when no observed point sits on the boundary of p except near a
// vertex.  Any process hyperplane crossing into the interior would have to
// cross a face of p, leaving an intersection point on that face.
bool boundary_clear(const Polytope& p, const std::vector<Vec>& pts, double eps)
{
    for (const Vec& x : pts) {
        double min_slack = std::numeric_limits<double>::infinity();
        bool inside = true;
        for (const auto& hs : p.halfspaces) {
            const double s = hs.slack(x);
            if (s < -eps) {
                inside = false;
                break;
            }
            min_slack = std::min(min_slack, s);
        }
        if (!inside || min_slack > eps) continue;  // off the boundary
        bool at_vertex = false;
        for (const Vec& v : p.vertices) {
            if ((x - v).norm() <= eps) {
                at_vertex = true;
                break;
            }
        }
        if (!at_vertex) return false;
    }
    return true;
}

}  // namespace

ReconstructionResult run_reconstruction(PointSource& src, const ConvexBody& k,
                                        const ReconstructionParams& params)
{
    const int d = k.dim();
    const double budget = params.resolved_max_radius(k.outradius());
    validate(params, k, budget);

    CandidateEngine engine(d, params);
    ReconstructionResult res;

    // Peel families depend on xi but not on the stage distance, so they are
    // rebuilt only when xi changes and re-tested cheaply against each t.
    std::vector<Hyperplane> xi_cached;
    EnclosureFamily fam;
    EnclosureFamily fam_single;

    while (auto p = src.next(budget)) {
        engine.add_point(p->x);
        ++res.points_consumed;
        const double t = p->dist;

        if (res.trace.empty() || res.trace.back().t < t) {
            res.trace.push_back(StageRecord{t, 0, 0});
        }
        StageRecord& stage = res.trace.back();
        stage.observed = static_cast<int>(engine.points().size());

        auto xi = engine.confirmed_missing(k);
        stage.xi_size = static_cast<int>(xi.size());
        if (static_cast<int>(xi.size()) < d + 1) continue;

        if (!same_hyperplanes(xi, xi_cached)) {
            fam = build_enclosure_family(xi, k, params);
            if (params.early_exit) {
                ReconstructionParams single = params;
                single.polytope_count = 1;
                fam_single = build_enclosure_family(xi, k, single);
            }
            xi_cached = std::move(xi);
        }

        if (params.early_exit && fam_single.certifies(t)) {
            const Polytope& inner = fam_single.polytopes.front();
            double scale = 1.0;
            for (const Vec& v : inner.vertices)
                scale = std::max(scale, v.template lpNorm<Eigen::Infinity>());
            const double eps = tol_at(params.incident_tol, scale);
            if (boundary_clear(inner, engine.points(), eps)) {
                res.t = t;
                res.stopping_radius = k.outradius() + t;
                res.terminated = true;
                res.empty_certificate = true;
                res.certificate = std::move(fam_single.polytopes);
                res.stages = static_cast<int>(res.trace.size());
                return res;
            }
        }

        if (fam.certifies(t)) {
            res.chi = engine.confirmed_hitting(k);
            res.t = t;
            res.stopping_radius = k.outradius() + t;
            res.terminated = true;
            res.certificate = std::move(fam.polytopes);
            res.stages = static_cast<int>(res.trace.size());
            return res;
        }
    }

    // Budget exhausted before certification; trace is kept for diagnostics.
    res.stages = static_cast<int>(res.trace.size());
    return res;
}

}  // namespace hipsim
