#include "hipsim/intersection/annulus.hpp"

#include "hipsim/error.hpp"
#include "hipsim/geometry/flat.hpp"

#include <algorithm>
#include <cmath>

namespace hipsim {

namespace {

bool observed_less(const ObservedPoint& a, const ObservedPoint& b)
{
    if (a.dist != b.dist) return a.dist < b.dist;
    return lex_less(a.x, b.x);
}

}  // namespace

std::vector<AnnulusPoint> points_in_annulus(WorldOracle& oracle, const ConvexBody& k, double r_lo,
                                            double r_hi, double tol)
{
    if (!(r_hi >= r_lo) || r_lo < 0.0) throw Error("points_in_annulus: need 0 <= r_lo <= r_hi");
    const double need = k.outradius() + r_hi;
    if (need > oracle.current_radius()) oracle.extend_to(need);

    // Any point with d(x,K) <= r_hi lies in B(0, need), so both parents have
    // |s| <= need and are exposed: the enumeration below is complete.
    const ConvexBody shell_ball = ConvexBody::ball(Vec::Zero(k.dim()), need + 1.0);
    const auto pts = intersection_points(oracle.hyperplanes(), shell_ball, tol);

    std::vector<AnnulusPoint> out;
    for (const auto& p : pts.points) {
        const double dist = k.distance(p.x);
        if (dist > r_lo && dist <= r_hi) out.push_back(AnnulusPoint{p.x, dist, p.parents});
    }
    std::sort(out.begin(), out.end(), [](const AnnulusPoint& a, const AnnulusPoint& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return lex_less(a.x, b.x);
    });
    return out;
}

OraclePointSource::OraclePointSource(WorldOracle& oracle, const ConvexBody& k, double tol)
    : oracle_(oracle), k_(k), tol_(tol), body_outradius_(k.outradius())
{
}

void OraclePointSource::grow_to(double frontier)
{
    const double need = body_outradius_ + frontier;
    if (need > oracle_.current_radius()) oracle_.extend_to(need);

    // Fresh = exposed since the last sync.  The exposed list is not
    // append-only under fractional extensions (new records interleave
    // inside the newest annulus block), so positions are not a stable
    // identity; the offset threshold |s| > synced radius is.
    const auto& hs = oracle_.hyperplanes();
    const std::size_t n = hs.size();
    std::vector<char> is_fresh(n, 0);
    std::vector<std::size_t> fresh_idx;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(hs[i].s) > synced_radius_) {
            is_fresh[i] = 1;
            fresh_idx.push_back(i);
        }
    }
    if (!fresh_idx.empty()) {
        const int d = hs[0].dim();
        std::vector<ObservedPoint> fresh;
        auto consider = [&](const Vec& x) {
            const double dist = k_.distance(x);
            if (dist > 0.0) fresh.push_back(ObservedPoint{x, dist});
        };
        if (d == 2) {
            // Each new pair exactly once: old x fresh at its fresh member,
            // fresh x fresh at the larger index.
            Vec x(2);
            for (std::size_t j : fresh_idx) {
                const Hyperplane& b = hs[j];
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == j || (is_fresh[i] && i > j)) continue;
                    const Hyperplane& a = hs[i];
                    const double det = a.u[0] * b.u[1] - a.u[1] * b.u[0];
                    if (std::abs(det) <= tol_) continue;
                    x[0] = (a.s * b.u[1] - b.s * a.u[1]) / det;
                    x[1] = (a.u[0] * b.s - b.u[0] * a.s) / det;
                    consider(x);
                }
            }
        } else {
            // Subsets containing at least one fresh hyperplane.
            std::vector<int> idx(d);
            std::vector<Hyperplane> sub(d);
            const int ni = static_cast<int>(n);
            for (int i = 0; i < d; ++i) idx[i] = i;
            while (true) {
                bool any_fresh = false;
                for (int i = 0; i < d; ++i) any_fresh = any_fresh || is_fresh[idx[i]];
                if (any_fresh) {
                    for (int i = 0; i < d; ++i) sub[i] = hs[idx[i]];
                    const auto f = intersect_hyperplanes(sub, tol_);
                    if (f && !f->degenerate && f->dim == 0) consider(f->anchor);
                }
                int t = d - 1;
                while (t >= 0 && idx[t] == ni - d + t) --t;
                if (t < 0) break;
                ++idx[t];
                for (int j = t + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        // Every fresh hyperplane has |s| above the synced radius, which is at
        // least outradius(K) + frontier, so fresh points sit strictly beyond
        // the frontier: the stable merge never moves already-emitted entries.
        std::sort(fresh.begin(), fresh.end(), observed_less);
        const std::size_t mid = buffer_.size();
        buffer_.insert(buffer_.end(), fresh.begin(), fresh.end());
        std::inplace_merge(buffer_.begin(), buffer_.begin() + mid, buffer_.end(), observed_less);
    }
    synced_radius_ = oracle_.current_radius();
    frontier_ = std::max(frontier_, frontier);
}

std::optional<ObservedPoint> OraclePointSource::next(double budget)
{
    while (true) {
        // The buffer head is confirmed once the frontier reaches its
        // distance: every hyperplane able to spawn a nearer point is then
        // already exposed.
        if (cursor_ < buffer_.size() && buffer_[cursor_].dist <= frontier_) {
            if (buffer_[cursor_].dist > budget) return std::nullopt;
            return buffer_[cursor_++];
        }
        // Exhaustion needs the same confirmation: only a frontier at the
        // budget proves no point hides in (frontier, budget].
        if (frontier_ >= budget) return std::nullopt;
        // Grow exactly to the nearest still-relevant target (unconfirmed
        // head, or blind steps toward the budget), keeping the sampled ball
        // at the stopping radius, never beyond.
        double target = std::min(budget, frontier_ + 2.0);
        if (cursor_ < buffer_.size()) target = std::min(target, buffer_[cursor_].dist);
        grow_to(target);
    }
}

}  // namespace hipsim
