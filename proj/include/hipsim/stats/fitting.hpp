#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hipsim {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
};

// Ordinary least squares y ~ slope*x + intercept; needs n >= 2 and
// non-constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct SlopeEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    Interval ci;
};

// log-log slope of a per-block statistic against xs, with a percentile
// bootstrap CI: each bootstrap round resamples every block (replicates at
// one x) with replacement, recomputes the statistic, refits.  The statistic
// is the block variance (the use case is variance scaling).
SlopeEstimate bootstrap_variance_log_slope(const std::vector<std::vector<double>>& blocks,
                                           std::span<const double> xs, int rounds, double level,
                                           std::uint64_t seed);

double normal_cdf(double z);

// Anderson-Darling A*^2 against the normal family with estimated mean and
// variance (includes the (1 + 0.75/n + 2.25/n^2) small-sample factor).
// Degenerate samples (zero variance) return +infinity.
double anderson_darling_normal(std::span<const double> xs);

// 1% critical value for the estimated-parameter normal test.
inline constexpr double kAdCritical01 = 1.035;

}  // namespace hipsim
