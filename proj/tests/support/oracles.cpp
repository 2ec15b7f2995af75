#include "oracles.hpp"

#include "hipsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hipsim::testing {

double mc_line_measure(const Vec& anchor, const Vec& dir, const ConvexBody& b, int samples,
                       Engine& rng)
{
    // Coarse scan to trim the parameter window around the chord, then a
    // uniform hit-rate estimate on the trimmed window.
    const double reach = anchor.norm() + b.outradius() + 1.0;
    const int coarse = 512;
    double lo = reach, hi = -reach;
    for (int i = 0; i <= coarse; ++i) {
        const double t = -reach + 2.0 * reach * i / coarse;
        if (b.contains(anchor + t * dir)) {
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    if (lo > hi) return 0.0;
    const double pad = 4.0 * reach / coarse;
    lo -= pad;
    hi += pad;

    std::uniform_real_distribution<double> unif(lo, hi);
    long hits = 0;
    for (int i = 0; i < samples; ++i) {
        if (b.contains(anchor + unif(rng) * dir)) ++hits;
    }
    return (hi - lo) * static_cast<double>(hits) / samples;
}

std::vector<Vec> brute_polytope_vertices(const std::vector<Halfspace>& hs, double tol)
{
    const int n = static_cast<int>(hs.size());
    if (n == 0) return {};
    const int d = hs[0].dim();

    double scale = 1.0;
    for (const auto& h : hs) scale = std::max(scale, std::abs(h.offset));
    const double eps = tol_at(tol, scale);

    std::vector<Vec> out;
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    if (n < d) return {};
    while (true) {
        Mat a(d, d);
        Vec rhs(d);
        for (int i = 0; i < d; ++i) {
            a.row(i) = hs[idx[i]].normal.transpose();
            rhs[i] = hs[idx[i]].offset;
        }
        Eigen::FullPivLU<Mat> lu(a);
        lu.setThreshold(1e-10);
        if (lu.rank() == d) {
            const Vec x = lu.solve(rhs);
            bool feasible = true;
            for (const auto& h : hs) {
                if (h.slack(x) < -eps) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) {
                bool dup = false;
                for (const auto& y : out) {
                    if ((x - y).norm() <= 1e-7 * std::max(1.0, x.norm())) {
                        dup = true;
                        break;
                    }
                }
                if (!dup) out.push_back(x);
            }
        }
        int t = d - 1;
        while (t >= 0 && idx[t] == n - d + t) --t;
        if (t < 0) break;
        ++idx[t];
        for (int j = t + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

bool bounded_by_normal_gaps_2d(const std::vector<Halfspace>& hs)
{
    std::vector<double> angs;
    angs.reserve(hs.size());
    for (const auto& h : hs) angs.push_back(std::atan2(h.normal[1], h.normal[0]));
    std::sort(angs.begin(), angs.end());
    double max_gap = 2.0 * std::numbers::pi - (angs.back() - angs.front());
    for (std::size_t i = 1; i < angs.size(); ++i) max_gap = std::max(max_gap, angs[i] - angs[i - 1]);
    return max_gap < std::numbers::pi - 1e-9;
}

std::vector<Hyperplane> brute_collections(std::span<const Vec> pts, const ConvexBody& k,
                                          bool hitting, const ReconstructionParams& params)
{
    const int d = k.dim();
    const int need = 2 * d - 1;
    const int n = static_cast<int>(pts.size());
    const double tol = std::max(params.gp_tol, params.incident_tol);

    std::vector<Hyperplane> out;
    if (n < need) return out;
    std::vector<int> idx(need);
    std::vector<Vec> sub(need);
    for (int i = 0; i < need; ++i) idx[i] = i;
    while (true) {
        for (int i = 0; i < need; ++i) sub[i] = pts[idx[i]];
        if (in_general_hyperplane_position(sub, tol)) {
            const auto h =
                hyperplane_through_points(std::span<const Vec>(sub.data(), d), params.gp_tol);
            if (hits(k, h) == hitting) {
                bool dup = false;
                for (const auto& g : out) {
                    if (canonical_distance(g, h) <= 1e-7) {
                        dup = true;
                        break;
                    }
                }
                if (!dup) out.push_back(h);
            }
        }
        int t = need - 1;
        while (t >= 0 && idx[t] == n - need + t) --t;
        if (t < 0) break;
        ++idx[t];
        for (int j = t + 1; j < need; ++j) idx[j] = idx[j - 1] + 1;
    }
    return sorted_canonical(std::move(out));
}

std::vector<BrutePoint> brute_intersection_points(std::span<const Hyperplane> hs,
                                                  const ConvexBody& window)
{
    const int n = static_cast<int>(hs.size());
    if (n == 0) return {};
    const int d = hs[0].dim();
    if (n < d) return {};

    std::vector<BrutePoint> out;
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    while (true) {
        Mat a(d, d);
        Vec rhs(d);
        for (int i = 0; i < d; ++i) {
            a.row(i) = hs[idx[i]].u.transpose();
            rhs[i] = hs[idx[i]].s;
        }
        Eigen::FullPivLU<Mat> lu(a);
        lu.setThreshold(1e-9);
        if (lu.rank() == d) {
            const Vec x = lu.solve(rhs);
            if (window.contains(x, tol_at(1e-9, x.cwiseAbs().maxCoeff()))) {
                out.push_back(BrutePoint{idx, x});
            }
        }
        int t = d - 1;
        while (t >= 0 && idx[t] == n - d + t) --t;
        if (t < 0) break;
        ++idx[t];
        for (int j = t + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    std::sort(out.begin(), out.end(),
              [](const BrutePoint& a, const BrutePoint& b) { return a.parents < b.parents; });
    return out;
}

double ks_two_sample_p(std::vector<double> a, std::vector<double> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d_stat = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d_stat = std::max(d_stat, std::abs(i / na - j / nb));
    }
    const double ne = na * nb / (na + nb);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d_stat;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(p, 0.0, 1.0);
}

bool brute_enclosure_family_exists(const std::vector<Hyperplane>& xi, const ConvexBody& k,
                                   double r, int count, double tol)
{
    const int n = static_cast<int>(xi.size());
    if (n > 16) throw Error("brute_enclosure_family_exists: too many hyperplanes");
    const int full = 1 << n;

    // certifies[mask]: the intersection of halfspaces in mask is bounded,
    // strictly contains k, and has all vertices within r of k.
    std::vector<char> certifies(full, 0);
    for (int mask = 1; mask < full; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) < k.dim() + 1) continue;
        std::vector<Halfspace> hs;
        for (int i = 0; i < n; ++i) {
            if (mask & (1 << i)) hs.push_back(halfspace_containing(xi[i], k));
        }
        try {
            const Polytope p = halfspace_polytope(hs, tol);
            if (p.bounded && enclosure_checks(p, k, r, tol)) certifies[mask] = 1;
        } catch (const EmptyIntersection&) {
        }
    }

    // exists[c][mask]: c pairwise-disjoint certifying subsets fit in mask.
    std::vector<std::vector<char>> exists(count + 1, std::vector<char>(full, 0));
    std::fill(exists[0].begin(), exists[0].end(), 1);
    for (int c = 1; c <= count; ++c) {
        for (int mask = 0; mask < full; ++mask) {
            for (int sub = mask; sub; sub = (sub - 1) & mask) {
                if (certifies[sub] && exists[c - 1][mask & ~sub]) {
                    exists[c][mask] = 1;
                    break;
                }
            }
        }
    }
    return exists[count][full - 1] != 0;
}

std::vector<Hyperplane> sorted_canonical(std::vector<Hyperplane> hs)
{
    std::sort(hs.begin(), hs.end(), [](const Hyperplane& a, const Hyperplane& b) {
        for (int i = 0; i < a.u.size(); ++i) {
            if (a.u[i] < b.u[i]) return true;
            if (a.u[i] > b.u[i]) return false;
        }
        return a.s < b.s;
    });
    return hs;
}

double max_match_distance(std::vector<Hyperplane> a, std::vector<Hyperplane> b)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    a = sorted_canonical(std::move(a));
    b = sorted_canonical(std::move(b));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, canonical_distance(a[i], b[i]));
    }
    return worst;
}

}  // namespace hipsim::testing
