#pragma once

#include "hipsim/common.hpp"
#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/geometry/hyperplane.hpp"
#include "hipsim/reconstruct/params.hpp"

#include <span>
#include <vector>

namespace hipsim {

// A hyperplane currently supported by at least min_points observed points.
struct DetectedCandidate {
    Hyperplane h;
    std::vector<int> members;  // indices into the observed point list
};

// Incremental candidate tracker: feed observed points one at a time; tracks
// every hyperplane with >= min_points incident points.  For d = 2 new
// candidates are found by direction grouping around the incoming point, for
// d = 3 by normal grouping over point pairs; both are verified by a full
// incidence sweep, and the whole structure is differentially tested against
// the one-shot detector below.
class CandidateEngine {
public:
    CandidateEngine(int d, ReconstructionParams params);

    void add_point(const Vec& x);

    const std::vector<Vec>& points() const { return pts_; }
    const std::vector<DetectedCandidate>& candidates() const { return cands_; }

    // Candidates with >= min_points members, some min_points of which are in
    // general hyperplane position, filtered by K-hit; canonical order.
    std::vector<Hyperplane> confirmed_missing(const ConvexBody& k) const;
    std::vector<Hyperplane> confirmed_hitting(const ConvexBody& k) const;

    int min_points() const { return min_points_; }

private:
    void try_create(const Hyperplane& h);
    std::vector<Hyperplane> confirmed(const ConvexBody& k, bool hitting) const;

    int d_;
    int min_points_;
    ReconstructionParams params_;
    double scale_ = 1.0;
    std::vector<Vec> pts_;
    std::vector<DetectedCandidate> cands_;

    // General-position verdicts are monotone under member growth (a found
    // subset stays valid), so confirmed() re-evaluates a candidate only when
    // its member list has grown since the last check.
    struct GpCache {
        std::size_t checked = 0;
        bool ok = false;
    };
    mutable std::vector<GpCache> gp_cache_;
};

// True when some min_points-subset of pts is in general hyperplane position.
bool has_general_position_subset(std::span<const Vec> pts, int min_points, double tol);

// One-shot candidate detection over a full point set: every hyperplane
// spanned by a d-subset (span volume above gp_tol) with >= min_points
// incident points, min_points of them in general position.  min_points <= 0
// resolves to 2d-1; lower values are unsound and exist for demonstrations.
std::vector<DetectedCandidate> detect_candidates(std::span<const Vec> pts, int min_points,
                                                 const ReconstructionParams& params);

// Detected hyperplanes that miss K (the certification input).
std::vector<Hyperplane> detect_hyperplanes(std::span<const Vec> pts, const ConvexBody& k,
                                           const ReconstructionParams& params);

// Detected hyperplanes that hit K (the reconstruction output at the
// stopping stage).
std::vector<Hyperplane> recover_hitting(std::span<const Vec> pts, const ConvexBody& k,
                                        const ReconstructionParams& params);

}  // namespace hipsim
