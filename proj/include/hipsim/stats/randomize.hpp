#pragma once

#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/intersection/points.hpp"
#include "hipsim/process/model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace hipsim {

// Independent keep-with-probability-p thinning; p must lie in (0, 1].
std::vector<Vec> thin(std::span<const Vec> points, double p, std::uint64_t seed);

// Cox randomisation of a point sample: every point is replicated with an
// independent Poisson(1) multiplicity (so the conditional mean count in any
// region equals the original count).
std::vector<Vec> cox_multiplicity_sample(std::span<const Vec> points, std::uint64_t seed);

// Cox randomisation of a lower-order intersection measure: on each flat
// contributing to the sample, a Poisson(measure) number of points placed
// uniformly on the flat clipped to the window.  Supports line flats in any
// dimension and plane flats in ambient dimension 3.
std::vector<Vec> cox_flat_sample(std::span<const Hyperplane> hs, const IntersectionMeasureSample& sample,
                                 const ConvexBody& window, std::uint64_t seed,
                                 double tol = kDefaultTol);

struct VarianceIdentity {
    int reps = 0;
    double mean_phi = 0.0;
    double var_phi = 0.0;
    double var_randomized = 0.0;  // left-hand side
    double predicted = 0.0;       // right-hand side from the identity
    double rel_err = 0.0;
};

// V[Psi_m(B)] = E[Phi_m(B)] + V[Phi_m(B)] for the Poisson-multiplicity Cox
// process.  Both sides are estimated on the same realizations, so the
// comparison is not washed out by independent sampling noise.
VarianceIdentity cox_variance_identity(const DirectionalModel& model, int m, const ConvexBody& b,
                                       int reps, std::uint64_t seed, int jobs = 1);

// V[Phi_p(B)] = p^2 V[Phi(B)] + p(1-p) E[Phi(B)] for independent
// p-thinning of the intersection points; same common-realization scheme.
VarianceIdentity thinning_variance_identity(const DirectionalModel& model, double p,
                                            const ConvexBody& b, int reps, std::uint64_t seed,
                                            int jobs = 1);

}  // namespace hipsim
