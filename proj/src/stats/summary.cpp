#include "hipsim/stats/summary.hpp"

#include <cmath>
#include <vector>

namespace hipsim {

double pairwise_sum(std::span<const double> xs)
{
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

MomentSummary summarize(std::span<const double> xs)
{
    MomentSummary out;
    out.n = xs.size();
    if (out.n == 0) return out;
    const double n = static_cast<double>(out.n);
    out.mean = pairwise_sum(xs) / n;
    if (out.n == 1) return out;

    std::vector<double> p2(out.n), p3(out.n), p4(out.n);
    for (std::size_t i = 0; i < out.n; ++i) {
        const double c = xs[i] - out.mean;
        p2[i] = c * c;
        p3[i] = p2[i] * c;
        p4[i] = p2[i] * p2[i];
    }
    const double m2 = pairwise_sum(p2) / n;
    const double m3 = pairwise_sum(p3) / n;
    const double m4 = pairwise_sum(p4) / n;

    out.variance = pairwise_sum(p2) / (n - 1.0);
    out.se_mean = std::sqrt(out.variance / n);
    if (m2 > 0.0) {
        out.skewness = m3 / std::pow(m2, 1.5);
        out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    const double var_of_var = m4 - m2 * m2;
    out.se_variance = var_of_var > 0.0 ? std::sqrt(var_of_var / n) : 0.0;
    return out;
}

}  // namespace hipsim
