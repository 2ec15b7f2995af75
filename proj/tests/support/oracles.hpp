#pragma once

// Reference implementations used only by the tests: slow, independent
// re-computations of library results (subset enumeration, Monte Carlo
// quadrature, exhaustive family search) plus small statistical helpers.

#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/geometry/hyperplane.hpp"
#include "hipsim/geometry/polytope.hpp"
#include "hipsim/intersection/annulus.hpp"
#include "hipsim/reconstruct/params.hpp"
#include "hipsim/rng.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hipsim::testing {

inline Vec v2(double x, double y) { return make_vec({x, y}); }
inline Vec v3(double x, double y, double z) { return make_vec({x, y, z}); }

// Line {p : ux*x + uy*y = s}; inputs need not be normalised.
inline Hyperplane line(double ux, double uy, double s)
{
    return make_hyperplane(v2(ux, uy), s);
}

// Length of {anchor + t*dir} inside b by Monte Carlo hit counting over a
// trimmed parameter window.  dir must be unit.
double mc_line_measure(const Vec& anchor, const Vec& dir, const ConvexBody& b, int samples,
                       Engine& rng);

// All vertices of the halfspace intersection by d-subset enumeration and a
// feasibility filter; deduplicated, lexicographically sorted.
std::vector<Vec> brute_polytope_vertices(const std::vector<Halfspace>& hs, double tol);

// 2D boundedness of a nonempty intersection: every circular gap between
// consecutive normal angles is below pi.
bool bounded_by_normal_gaps_2d(const std::vector<Halfspace>& hs);

// Hyperplanes supported by some (2d-1)-point subset in general hyperplane
// position, filtered by whether they hit k; deduplicated canonical list.
std::vector<Hyperplane> brute_collections(std::span<const Vec> pts, const ConvexBody& k,
                                          bool hitting, const ReconstructionParams& params);

struct BrutePoint {
    std::vector<int> parents;
    Vec x;
};

// Window-hitting intersection points by direct d-subset solves.
std::vector<BrutePoint> brute_intersection_points(std::span<const Hyperplane> hs,
                                                  const ConvexBody& window);

// Two-sample Kolmogorov-Smirnov p-value (asymptotic series).
double ks_two_sample_p(std::vector<double> a, std::vector<double> b);

// Exhaustive search (d=2, |xi| <= 16): does a family of `count` certifying
// polytopes over pairwise-disjoint subsets of xi exist at distance r?
bool brute_enclosure_family_exists(const std::vector<Hyperplane>& xi, const ConvexBody& k,
                                   double r, int count, double tol);

std::vector<Hyperplane> sorted_canonical(std::vector<Hyperplane> hs);

// Max canonical distance between matched elements of the two lists after
// sorting, or +infinity when the sizes differ.
double max_match_distance(std::vector<Hyperplane> a, std::vector<Hyperplane> b);

// Fixed point list served as a PointSource; counts next() calls.
class ScriptedSource : public PointSource {
public:
    explicit ScriptedSource(std::vector<ObservedPoint> pts) : pts_(std::move(pts)) {}

    std::optional<ObservedPoint> next(double budget) override
    {
        ++calls;
        if (i_ < pts_.size() && pts_[i_].dist <= budget) return pts_[i_++];
        return std::nullopt;
    }

    int calls = 0;

private:
    std::vector<ObservedPoint> pts_;
    std::size_t i_ = 0;
};

}  // namespace hipsim::testing
