#pragma once

#include "hipsim/common.hpp"
#include "hipsim/geometry/hyperplane.hpp"
#include "hipsim/geometry/polytope.hpp"

#include <limits>
#include <vector>

namespace hipsim {

struct ReconstructionParams {
    // Point-on-hyperplane slack, relative to the observed point scale.
    double incident_tol = 1e-9;
    // Degeneracy threshold for spans (relative determinant test).
    double gp_tol = 1e-9;
    // Search budget in d(.,K) units; non-positive means 50 x outradius(K).
    double max_radius = 0.0;
    // Number of nested disjoint-facet polytopes to certify; non-positive
    // means 2d-1.  Values below 2d-1 are experimental.
    int polytope_count = 0;
    // Stop once a single certified polytope has no residual points in the
    // relative interiors of its boundary faces (certifies chi empty).
    bool early_exit = false;

    double resolved_max_radius(double body_outradius) const
    {
        return max_radius > 0.0 ? max_radius : 50.0 * std::max(body_outradius, 1e-12);
    }
    int resolved_polytope_count(int d) const { return polytope_count > 0 ? polytope_count : 2 * d - 1; }
};

struct StageRecord {
    double t = 0.0;       // stopping-candidate radius T_n
    int observed = 0;     // points consumed so far
    int xi_size = 0;      // detected hyperplanes missing K
};

inline constexpr double kNoStop = std::numeric_limits<double>::infinity();

struct ReconstructionResult {
    std::vector<Hyperplane> chi;   // recovered hyperplanes hitting K
    double t = kNoStop;            // stopping time T (kNoStop = budget exhausted)
    double stopping_radius = kNoStop;  // R(K_T) = outradius(K) + T
    int stages = 0;
    bool terminated = false;
    bool empty_certificate = false;  // early-exit certificate that chi is empty
    std::size_t points_consumed = 0;
    std::vector<Polytope> certificate;  // certified nested polytopes at T
    std::vector<StageRecord> trace;
};

}  // namespace hipsim
