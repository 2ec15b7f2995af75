#pragma once

#include "hipsim/common.hpp"
#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/intersection/points.hpp"
#include "hipsim/process/world.hpp"

#include <optional>
#include <vector>

namespace hipsim {

// Intersection point in the shell around K, ordered by (distance, lex).
struct AnnulusPoint {
    Vec x;
    double dist = 0.0;
    std::vector<int> parents;  // indices into oracle.hyperplanes() at the
                               // radius established by the producing call
};

// All intersection points with r_lo < d(x,K) <= r_hi.  Extends the oracle to
// outradius(K) + r_hi, which makes the returned set complete: any point of
// the full process in that shell is derivable from the exposed hyperplanes.
std::vector<AnnulusPoint> points_in_annulus(WorldOracle& oracle, const ConvexBody& k, double r_lo,
                                            double r_hi, double tol = kDefaultTol);

struct ObservedPoint {
    Vec x;
    double dist = 0.0;
};

// Position-only stream of intersection points around K in increasing
// (distance, lex) order.  The reconstruction consumes this; parent
// hyperplanes are never revealed through it.
class PointSource {
public:
    virtual ~PointSource() = default;
    // Next unseen point with distance <= budget, or nullopt once the stream
    // is exhausted up to the budget.
    virtual std::optional<ObservedPoint> next(double budget) = 0;
};

// Lazy source over a world oracle.  Grows the sampled ball just far enough
// to confirm the next point in distance order (new intersection points are
// enumerated incrementally against the known hyperplanes), so the sampled
// region tracks the consumer's stopping set instead of overshooting it.
class OraclePointSource : public PointSource {
public:
    OraclePointSource(WorldOracle& oracle, const ConvexBody& k, double tol = kDefaultTol);

    std::optional<ObservedPoint> next(double budget) override;

    // How far (in d(.,K) units) the stream has confirmed completeness; stays
    // within a small blind-start step of the last emitted distance.
    double frontier() const { return frontier_; }

private:
    void grow_to(double frontier);

    WorldOracle& oracle_;
    const ConvexBody& k_;
    double tol_;
    double body_outradius_;
    double frontier_ = 0.0;       // completeness limit in d(.,K) units
    double synced_radius_ = -1.0; // hyperplanes with |s| <= this are enumerated
    std::vector<ObservedPoint> buffer_;  // sorted by (dist, lex)
    std::size_t cursor_ = 0;
};

}  // namespace hipsim
