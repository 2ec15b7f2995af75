#include "hipsim/reconstruct/detect.hpp"

#include "hipsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hipsim {

namespace {

// Canonical-form separation below which two detected hyperplanes are the
// same candidate.  Spanning error is ~1e-12 at desk scale; distinct process
// hyperplanes are far above this almost surely.
constexpr double kDupTol = 1e-7;
constexpr double kGroupTol = 1e-7;

bool canonical_less(const Hyperplane& a, const Hyperplane& b)
{
    for (int i = 0; i < a.u.size(); ++i) {
        if (a.u[i] < b.u[i]) return true;
        if (a.u[i] > b.u[i]) return false;
    }
    return a.s < b.s;
}

bool near_duplicate(const std::vector<DetectedCandidate>& cands, const Hyperplane& h)
{
    for (const auto& c : cands) {
        if (canonical_distance(c.h, h) <= kDupTol) return true;
    }
    return false;
}

std::vector<int> sweep_members(const std::vector<Vec>& pts, const Hyperplane& h, double slack)
{
    std::vector<int> members;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (distance_to_hyperplane(h, pts[i]) <= slack) members.push_back(static_cast<int>(i));
    }
    return members;
}

}  // namespace

bool has_general_position_subset(std::span<const Vec> pts, int min_points, double tol)
{
    const int n = static_cast<int>(pts.size());
    if (n < min_points) return false;
    const int d = static_cast<int>(pts[0].size());
    if (min_points < d) return false;

    // Fast path: one well-spread subset usually works.
    if (d == 2 && min_points == 3) {
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(pts[a], pts[b]); });
        const Vec& a = pts[order.front()];
        const Vec& b = pts[order.back()];
        for (int i = 1; i + 1 < n; ++i) {
            const Vec trial[3] = {a, pts[order[i]], b};
            if (in_general_hyperplane_position(trial, tol)) return true;
        }
    }

    // Exhaustive subset search with a size cap; clusters stay small in
    // practice, and a capped miss only delays detection by a stage.
    double combos = 1.0;
    for (int i = 0; i < min_points; ++i) combos *= static_cast<double>(n - i) / (i + 1);
    const int limit = combos <= 100000.0 ? n : std::min(n, min_points + 12);

    std::vector<int> idx(min_points);
    for (int i = 0; i < min_points; ++i) idx[i] = i;
    std::vector<Vec> sub(min_points);
    while (true) {
        for (int i = 0; i < min_points; ++i) sub[i] = pts[idx[i]];
        if (in_general_hyperplane_position(sub, tol)) return true;
        int k = min_points - 1;
        while (k >= 0 && idx[k] == limit - min_points + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < min_points; ++j) idx[j] = idx[j - 1] + 1;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Incremental engine

CandidateEngine::CandidateEngine(int d, ReconstructionParams params)
    : d_(d), min_points_(2 * d - 1), params_(params)
{
    if (d != 2 && d != 3)
        throw UnsupportedDimension("CandidateEngine: incremental detection only for d in {2,3}");
}

void CandidateEngine::try_create(const Hyperplane& h)
{
    if (near_duplicate(cands_, h)) return;
    const double slack = tol_at(params_.incident_tol, scale_);
    auto members = sweep_members(pts_, h, slack);
    if (static_cast<int>(members.size()) >= min_points_)
        cands_.push_back(DetectedCandidate{h, std::move(members)});
}

void CandidateEngine::add_point(const Vec& x)
{
    const int idx = static_cast<int>(pts_.size());
    pts_.push_back(x);
    scale_ = std::max(scale_, x.template lpNorm<Eigen::Infinity>());
    const double slack = tol_at(params_.incident_tol, scale_);

    for (auto& c : cands_) {
        if (distance_to_hyperplane(c.h, x) <= slack) c.members.push_back(idx);
    }

    if (d_ == 2) {
        // Direction grouping: collinear priors fold to the same angle mod pi.
        struct Ent {
            double ang;
            int q;
        };
        std::vector<Ent> ents;
        ents.reserve(idx);
        for (int q = 0; q < idx; ++q) {
            const double dx = pts_[q][0] - x[0];
            const double dy = pts_[q][1] - x[1];
            if (std::abs(dx) + std::abs(dy) <= slack) continue;  // coincident
            double a = std::atan2(dy, dx);
            if (a < 0.0) a += std::numbers::pi;
            if (a >= std::numbers::pi) a -= std::numbers::pi;
            ents.push_back(Ent{a, q});
        }
        std::sort(ents.begin(), ents.end(), [](const Ent& a, const Ent& b) { return a.ang < b.ang; });

        std::vector<std::vector<int>> groups;
        for (std::size_t i = 0; i < ents.size(); ++i) {
            if (i == 0 || ents[i].ang - ents[i - 1].ang > kGroupTol) groups.emplace_back();
            groups.back().push_back(ents[i].q);
        }
        // Fold the wrap-around pair of groups (angles near 0 and near pi).
        if (groups.size() > 1 && ents.front().ang + std::numbers::pi - ents.back().ang <= kGroupTol) {
            for (int q : groups.back()) groups.front().push_back(q);
            groups.pop_back();
        }

        for (const auto& g : groups) {
            if (static_cast<int>(g.size()) + 1 < min_points_) continue;
            int far = g[0];
            double best = 0.0;
            for (int q : g) {
                const double dist = (pts_[q] - x).norm();
                if (dist > best) {
                    best = dist;
                    far = q;
                }
            }
            const Vec span[2] = {x, pts_[far]};
            const auto n = span_normal(span, params_.gp_tol);
            if (!n) continue;
            try_create(make_hyperplane(*n, n->dot(x)));
        }
    } else {
        // Normal grouping over prior pairs; all planes pass through x, so the
        // canonical normal identifies the plane.
        struct Ent3 {
            Vec u;
            double quality;
        };
        std::vector<Ent3> ents;
        for (int i = 0; i < idx; ++i) {
            const Vec a = pts_[i] - x;
            const double an = a.norm();
            if (an <= slack) continue;
            for (int j = i + 1; j < idx; ++j) {
                const Vec b = pts_[j] - x;
                const double bn = b.norm();
                if (bn <= slack) continue;
                Vec n(3);
                n[0] = a[1] * b[2] - a[2] * b[1];
                n[1] = a[2] * b[0] - a[0] * b[2];
                n[2] = a[0] * b[1] - a[1] * b[0];
                const double nn = n.norm();
                if (nn <= params_.gp_tol * an * bn) continue;
                n /= nn;
                for (int t = 0; t < 3; ++t) {
                    if (std::abs(n[t]) > 1e-12) {
                        if (n[t] < 0.0) n = -n;
                        break;
                    }
                }
                ents.push_back(Ent3{n, nn / (an * bn)});
            }
        }
        std::sort(ents.begin(), ents.end(), [](const Ent3& a, const Ent3& b) { return a.u[0] < b.u[0]; });

        struct Group {
            Vec rep;
            double rep_quality;
            int count;
        };
        std::vector<Group> groups;
        std::size_t tail = 0;
        for (const auto& e : ents) {
            bool joined = false;
            while (tail < groups.size() && groups[tail].rep[0] < e.u[0] - kGroupTol) ++tail;
            for (std::size_t gi = tail; gi < groups.size(); ++gi) {
                if ((groups[gi].rep - e.u).template lpNorm<Eigen::Infinity>() <= kGroupTol) {
                    ++groups[gi].count;
                    if (e.quality > groups[gi].rep_quality) {
                        groups[gi].rep = e.u;
                        groups[gi].rep_quality = e.quality;
                    }
                    joined = true;
                    break;
                }
            }
            if (!joined) groups.push_back(Group{e.u, e.quality, 1});
        }
        for (const auto& g : groups) {
            // min_points total needs 4 coplanar priors = 6 pairs, but skipped
            // degenerate pairs can reduce that; 3 is a safe trigger.
            if (g.count < 3) continue;
            try_create(make_hyperplane(g.rep, g.rep.dot(x)));
        }
    }
}

std::vector<Hyperplane> CandidateEngine::confirmed(const ConvexBody& k, bool hitting) const
{
    const double tol = std::max(params_.gp_tol, params_.incident_tol);
    gp_cache_.resize(cands_.size());
    std::vector<Hyperplane> out;
    for (std::size_t ci = 0; ci < cands_.size(); ++ci) {
        const auto& c = cands_[ci];
        if (static_cast<int>(c.members.size()) < min_points_) continue;
        GpCache& gc = gp_cache_[ci];
        if (!gc.ok && gc.checked != c.members.size()) {
            std::vector<Vec> mpts;
            mpts.reserve(c.members.size());
            for (int i : c.members) mpts.push_back(pts_[i]);
            gc.ok = has_general_position_subset(mpts, min_points_, tol);
            gc.checked = c.members.size();
        }
        if (!gc.ok) continue;
        if (hits(k, c.h) != hitting) continue;
        out.push_back(c.h);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::vector<Hyperplane> CandidateEngine::confirmed_missing(const ConvexBody& k) const
{
    return confirmed(k, false);
}

std::vector<Hyperplane> CandidateEngine::confirmed_hitting(const ConvexBody& k) const
{
    return confirmed(k, true);
}

// ---------------------------------------------------------------------------
// One-shot detection

std::vector<DetectedCandidate> detect_candidates(std::span<const Vec> pts, int min_points,
                                                 const ReconstructionParams& params)
{
    std::vector<DetectedCandidate> cands;
    if (pts.empty()) return cands;
    const int d = static_cast<int>(pts[0].size());
    const int need = min_points > 0 ? min_points : 2 * d - 1;
    const int n = static_cast<int>(pts.size());
    if (n < d) return cands;

    double scale = 1.0;
    for (const Vec& p : pts) scale = std::max(scale, p.template lpNorm<Eigen::Infinity>());
    const double slack = tol_at(params.incident_tol, scale);
    const double tol = std::max(params.gp_tol, params.incident_tol);

    std::vector<Vec> all(pts.begin(), pts.end());
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    std::vector<Vec> sub(d);
    while (true) {
        for (int i = 0; i < d; ++i) sub[i] = pts[idx[i]];
        const auto normal = span_normal(sub, params.gp_tol);
        if (normal) {
            const Hyperplane h = make_hyperplane(*normal, normal->dot(sub[0]));
            if (!near_duplicate(cands, h)) {
                auto members = sweep_members(all, h, slack);
                if (static_cast<int>(members.size()) >= need) {
                    std::vector<Vec> mpts;
                    for (int i : members) mpts.push_back(all[i]);
                    if (has_general_position_subset(mpts, need, tol))
                        cands.push_back(DetectedCandidate{h, std::move(members)});
                }
            }
        }
        int k = d - 1;
        while (k >= 0 && idx[k] == n - d + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(cands.begin(), cands.end(),
              [](const DetectedCandidate& a, const DetectedCandidate& b) { return canonical_less(a.h, b.h); });
    return cands;
}

namespace {

std::vector<Hyperplane> detect_filtered(std::span<const Vec> pts, const ConvexBody& k,
                                        const ReconstructionParams& params, bool hitting)
{
    std::vector<Hyperplane> out;
    for (const auto& c : detect_candidates(pts, 0, params)) {
        if (hits(k, c.h) == hitting) out.push_back(c.h);
    }
    return out;
}

}  // namespace

std::vector<Hyperplane> detect_hyperplanes(std::span<const Vec> pts, const ConvexBody& k,
                                           const ReconstructionParams& params)
{
    return detect_filtered(pts, k, params, false);
}

std::vector<Hyperplane> recover_hitting(std::span<const Vec> pts, const ConvexBody& k,
                                        const ReconstructionParams& params)
{
    return detect_filtered(pts, k, params, true);
}

}  // namespace hipsim
