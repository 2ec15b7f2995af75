#include "hipsim/stats/fitting.hpp"

#include "hipsim/error.hpp"
#include "hipsim/rng.hpp"
#include "hipsim/stats/summary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace hipsim {

LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw ConfigInvalid("fit_line: size mismatch");
    if (x.size() < 2) throw ConfigInvalid("fit_line: need at least two points");
    LineFit out;
    out.n = x.size();
    const double n = static_cast<double>(x.size());
    const double mx = pairwise_sum(x) / n;
    const double my = pairwise_sum(y) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw ConfigInvalid("fit_line: constant abscissa");
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return out;
}

namespace {

double block_variance(const std::vector<double>& block)
{
    return summarize(block).variance;
}

}  // namespace

SlopeEstimate bootstrap_variance_log_slope(const std::vector<std::vector<double>>& blocks,
                                           std::span<const double> xs, int rounds, double level,
                                           std::uint64_t seed)
{
    if (blocks.size() != xs.size()) throw ConfigInvalid("bootstrap slope: size mismatch");
    if (!(level > 0.0 && level < 1.0)) throw ConfigInvalid("bootstrap slope: level in (0,1)");

    const std::size_t k = blocks.size();
    std::vector<double> lx(k), ly(k);
    for (std::size_t i = 0; i < k; ++i) {
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(std::max(block_variance(blocks[i]), 1e-300));
    }
    const LineFit point = fit_line(lx, ly);

    SlopeEstimate out;
    out.slope = point.slope;
    out.intercept = point.intercept;
    out.r_squared = point.r_squared;

    std::vector<double> slopes(rounds);
    std::vector<double> resampled;
    for (int b = 0; b < rounds; ++b) {
        Engine rng = stream_engine(seed, static_cast<std::uint64_t>(b));
        std::vector<double> by(k);
        for (std::size_t i = 0; i < k; ++i) {
            const auto& block = blocks[i];
            std::uniform_int_distribution<std::size_t> pick(0, block.size() - 1);
            resampled.resize(block.size());
            for (auto& v : resampled) v = block[pick(rng)];
            by[i] = std::log(std::max(block_variance(resampled), 1e-300));
        }
        slopes[b] = fit_line(lx, by).slope;
    }
    std::sort(slopes.begin(), slopes.end());
    const double alpha = (1.0 - level) / 2.0;
    const auto pick_q = [&](double q) {
        const double pos = q * (rounds - 1);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        return i + 1 < slopes.size() ? slopes[i] * (1.0 - frac) + slopes[i + 1] * frac : slopes[i];
    };
    out.ci.lo = pick_q(alpha);
    out.ci.hi = pick_q(1.0 - alpha);
    return out;
}

double normal_cdf(double z)
{
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double anderson_darling_normal(std::span<const double> xs)
{
    const std::size_t n = xs.size();
    if (n < 8) throw ConfigInvalid("anderson_darling_normal: need at least 8 samples");
    const MomentSummary s = summarize(xs);
    if (!(s.variance > 0.0)) return std::numeric_limits<double>::infinity();
    const double sd = std::sqrt(s.variance);

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = normal_cdf((xs[i] - s.mean) / sd);
    std::sort(u.begin(), u.end());

    const double nn = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ui = std::clamp(u[i], 1e-15, 1.0 - 1e-15);
        const double uj = std::clamp(u[n - 1 - i], 1e-15, 1.0 - 1e-15);
        acc += (2.0 * static_cast<double>(i) + 1.0) * (std::log(ui) + std::log1p(-uj));
    }
    const double a2 = -nn - acc / nn;
    return a2 * (1.0 + 0.75 / nn + 2.25 / (nn * nn));
}

}  // namespace hipsim
