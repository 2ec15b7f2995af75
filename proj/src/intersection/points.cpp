#include "hipsim/intersection/points.hpp"

#include "hipsim/error.hpp"
#include "hipsim/geometry/flat.hpp"
#include "hipsim/geometry/measures.hpp"

#include <cmath>

namespace hipsim {

namespace {

// Bounding ball of the window used by the pair pre-filter.
struct BoundingBall {
    Vec centre;
    double radius;
};

BoundingBall bounding_ball(const ConvexBody& w)
{
    if (w.kind() == ConvexBody::Kind::Ball) return {w.ball_centre(), w.ball_radius()};
    const Vec c = w.centre_hint();
    double r = 0.0;
    for (const Vec& v : w.vertices()) r = std::max(r, (v - c).norm());
    return {c, r};
}

bool solve_pair_2d(const Hyperplane& a, const Hyperplane& b, double tol, Vec& out)
{
    const double det = a.u[0] * b.u[1] - a.u[1] * b.u[0];
    if (std::abs(det) <= tol) return false;
    out.resize(2);
    out[0] = (a.s * b.u[1] - b.s * a.u[1]) / det;
    out[1] = (a.u[0] * b.s - b.u[0] * a.s) / det;
    return true;
}

}  // namespace

IntersectionPointSet intersection_points(std::span<const Hyperplane> hs, const ConvexBody& window,
                                         double tol)
{
    IntersectionPointSet out;
    if (hs.empty()) return out;
    const int d = hs[0].dim();
    const int n = static_cast<int>(hs.size());
    if (n < d) return out;

    if (d == 2) {
        Vec x(2);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (!solve_pair_2d(hs[i], hs[j], tol, x)) {
                    ++out.near_singular_skipped;
                    continue;
                }
                if (window.contains(x)) out.points.push_back(IntersectionPoint{x, {i, j}});
            }
        }
        return out;
    }

    if (d == 3) {
        const auto bb = bounding_ball(window);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const Hyperplane pair[2] = {hs[i], hs[j]};
                const auto line = intersect_hyperplanes(pair, tol);
                if (!line || line->degenerate || line->dim != 1) {
                    // Parallel pair: every triple through it is near-singular.
                    out.near_singular_skipped += n - j - 1;
                    continue;
                }
                if (distance_to_flat(*line, bb.centre) > bb.radius) continue;  // conservative skip
                const Vec& dir = line->directions[0];
                for (int k = j + 1; k < n; ++k) {
                    const double dv = hs[k].u.dot(dir);
                    if (std::abs(dv) <= tol) {
                        ++out.near_singular_skipped;
                        continue;
                    }
                    const double t = (hs[k].s - hs[k].u.dot(line->anchor)) / dv;
                    const Vec x3 = line->anchor + t * dir;
                    if (window.contains(x3)) out.points.push_back(IntersectionPoint{x3, {i, j, k}});
                }
            }
        }
        return out;
    }

    // General d: plain subset enumeration through the flat solver.
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    std::vector<Hyperplane> sub(d);
    while (true) {
        for (int i = 0; i < d; ++i) sub[i] = hs[idx[i]];
        const auto f = intersect_hyperplanes(sub, tol);
        if (!f || f->degenerate || f->dim != 0) ++out.near_singular_skipped;
        else if (window.contains(f->anchor)) out.points.push_back(IntersectionPoint{f->anchor, idx});
        int k = d - 1;
        while (k >= 0 && idx[k] == n - d + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

IntersectionMeasureSample phi_m_measure(std::span<const Hyperplane> hs, int m, const ConvexBody& window,
                                        double tol)
{
    if (hs.empty()) return IntersectionMeasureSample{m, 0.0, {}, 0};
    const int d = hs[0].dim();
    if (m < 1 || m > d) throw Error("phi_m_measure: order must satisfy 1 <= m <= d");

    IntersectionMeasureSample out;
    out.m = m;
    const int n = static_cast<int>(hs.size());
    if (n < m) return out;

    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    std::vector<Hyperplane> sub(m);
    while (true) {
        for (int i = 0; i < m; ++i) sub[i] = hs[idx[i]];
        const auto f = intersect_hyperplanes(sub, tol);
        if (!f || f->degenerate) {
            ++out.degenerate_skipped;
        } else {
            const double v = flat_measure_in_window(*f, window);
            if (v > 0.0) {
                out.total += v;
                out.contributions.push_back(PhiContribution{idx, v});
            }
        }
        int k = m - 1;
        while (k >= 0 && idx[k] == n - m + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

double phi_m_total(std::span<const Hyperplane> hs, int m, const ConvexBody& window, double tol)
{
    if (hs.empty()) return 0.0;
    const int d = hs[0].dim();
    if (m == d) return static_cast<double>(intersection_points(hs, window, tol).points.size());

    const int n = static_cast<int>(hs.size());
    if (n < m) return 0.0;
    if (m == 1) {
        double total = 0.0;
        for (const Hyperplane& h : hs) {
            const Hyperplane one[1] = {h};
            const auto f = intersect_hyperplanes(one, tol);
            if (f) total += flat_measure_in_window(*f, window);
        }
        return total;
    }
    return phi_m_measure(hs, m, window, tol).total;
}

}  // namespace hipsim
