#pragma once

#include <cstddef>
#include <span>

namespace hipsim {

// Pairwise (cascade) summation: deterministic for a fixed input order and
// far smaller rounding error than a running sum on long Monte Carlo arrays.
double pairwise_sum(std::span<const double> xs);

struct MomentSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;         // unbiased (n-1)
    double skewness = 0.0;         // m3 / m2^(3/2)
    double excess_kurtosis = 0.0;  // m4 / m2^2 - 3
    double se_mean = 0.0;
    double se_variance = 0.0;      // sqrt((m4 - m2^2)/n), the large-n delta-method error
};

MomentSummary summarize(std::span<const double> xs);

}  // namespace hipsim
