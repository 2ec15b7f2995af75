#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace hipsim {

// Dimensions are small (typically 2 or 3); vectors stay on the stack.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

// Default relative tolerance knob; absolute slack is rel * max(scale, 1),
// so sub-unit problems keep a sane floor.
inline constexpr double kDefaultTol = 1e-9;

inline double tol_at(double rel, double scale)
{
    return rel * std::max(scale, 1.0);
}

inline Vec make_vec(std::initializer_list<double> xs)
{
    Vec v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

// Strict lexicographic order on coordinates; used wherever a deterministic
// point order is required (tie-breaking, canonical output order).
inline bool lex_less(const Vec& a, const Vec& b)
{
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

}  // namespace hipsim
