#pragma once

#include "hipsim/process/model.hpp"
#include "hipsim/stats/fitting.hpp"

#include <cstdint>
#include <vector>

namespace hipsim {

struct PairCorrelationBin {
    double r_lo = 0.0;
    double r_hi = 0.0;
    double mid = 0.0;
    double rho = 0.0;     // pair correlation estimate
    double ci_lo = 0.0;   // 99% normal interval across replications
    double ci_hi = 0.0;
};

struct PairCorrelationReport {
    int reps = 0;
    double analysis_radius = 0.0;
    double max_distance = 0.0;
    double gamma_hat = 0.0;  // pooled point intensity
    bool anisotropic_warning = false;
    std::vector<PairCorrelationBin> bins;
    // Fit of log(rho - 1) vs log r over [fit_lo, fit_hi]; bins with
    // rho <= 1 are excluded (the log is undefined there).
    double fit_lo = 0.0, fit_hi = 0.0;
    double decay_exponent = 0.0;
    Interval decay_ci;  // bootstrap over replications
    int fit_bins = 0;
    // Mean rho over [tail_lo, tail_hi] with a 99% interval (flatness check).
    double tail_lo = 0.0, tail_hi = 0.0;
    double tail_mean = 0.0;
    Interval tail_ci;
};

// Distance-histogram pair correlation of the intersection point process.
// Reference points live in B(0, analysis_radius); neighbours are sampled out
// to analysis_radius + max_distance, so every annulus around a reference
// point is fully observed and no boundary correction is needed.  Ring-volume
// normalisation uses the pooled intensity estimate, so a homogeneous Poisson
// process gives rho = 1 in every bin.
PairCorrelationReport pair_correlation(const DirectionalModel& model, double analysis_radius,
                                       int bin_count, double max_distance, int reps,
                                       std::uint64_t seed, double fit_lo = 5.0, double fit_hi = 20.0,
                                       double tail_lo = 30.0, double tail_hi = 40.0, int jobs = 1);

// Same estimator fed by a homogeneous Poisson process of the given
// intensity (control: rho = 1 identically).
PairCorrelationReport pair_correlation_poisson(double intensity, int dim, double analysis_radius,
                                               int bin_count, double max_distance, int reps,
                                               std::uint64_t seed, double fit_lo = 5.0,
                                               double fit_hi = 20.0, double tail_lo = 30.0,
                                               double tail_hi = 40.0, int jobs = 1);

}  // namespace hipsim
