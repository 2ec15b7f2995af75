#include "hipsim/geometry/linprog.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace hipsim {

namespace {

constexpr double kEps = 1e-10;

struct Tableau {
    Eigen::MatrixXd t;       // m rows of constraints, one objective row
    std::vector<int> basis;  // basic variable per constraint row
    int m = 0;
    int ncols = 0;  // structural columns (RHS is column ncols)

    double& rhs(int i) { return t(i, ncols); }
    double& obj(int j) { return t(m, j); }

    void pivot(int row, int col)
    {
        t.row(row) /= t(row, col);
        for (int i = 0; i <= m; ++i) {
            if (i == row) continue;
            const double f = t(i, col);
            if (std::abs(f) > 0.0) t.row(i) -= f * t.row(row);
        }
        basis[row] = col;
    }

    // Bland's rule; entering restricted to columns < limit.
    // Returns false when no improving column remains (optimal).
    // Throws nothing; unbounded reported via flag.
    enum class Step { Optimal, Pivoted, Unbounded };

    Step step(int limit)
    {
        int enter = -1;
        for (int j = 0; j < limit; ++j) {
            if (obj(j) < -kEps) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return Step::Optimal;
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) > kEps) {
                const double ratio = rhs(i) / t(i, enter);
                if (ratio < best - kEps || (ratio < best + kEps && (leave < 0 || basis[i] < basis[leave]))) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) return Step::Unbounded;
        pivot(leave, enter);
        return Step::Pivoted;
    }
};

}  // namespace

LpSolution lp_maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
{
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());

    // Columns: x+ (n) | x- (n) | slack (m) | artificial (k), RHS last.
    int nneg = 0;
    for (int i = 0; i < m; ++i) {
        if (b[i] < 0.0) ++nneg;
    }
    const int ncols = 2 * n + m + nneg;

    Tableau tb;
    tb.m = m;
    tb.ncols = ncols;
    tb.t = Eigen::MatrixXd::Zero(m + 1, ncols + 1);
    tb.basis.assign(m, -1);

    int art = 2 * n + m;
    for (int i = 0; i < m; ++i) {
        const double sgn = b[i] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) {
            tb.t(i, j) = sgn * a(i, j);
            tb.t(i, n + j) = -sgn * a(i, j);
        }
        tb.t(i, 2 * n + i) = sgn;  // slack
        tb.t(i, ncols) = sgn * b[i];
        if (b[i] < 0.0) {
            tb.t(i, art) = 1.0;
            tb.basis[i] = art;
            ++art;
        } else {
            tb.basis[i] = 2 * n + i;
        }
    }

    // Phase 1: minimise the artificial sum.  Objective row: z_j - c_j with
    // c = -sum of artificials, i.e. row = -sum of artificial-basic rows.
    if (nneg > 0) {
        for (int i = 0; i < m; ++i) {
            if (tb.basis[i] >= 2 * n + m) tb.t.row(m) -= tb.t.row(i);
        }
        for (int j = 2 * n + m; j < ncols; ++j) tb.obj(j) = 0.0;
        while (true) {
            const auto s = tb.step(2 * n + m);  // artificials never re-enter
            if (s == Tableau::Step::Optimal) break;
            if (s == Tableau::Step::Unbounded) break;  // cannot happen: phase-1 bounded below
        }
        if (-tb.t(m, ncols) > 1e-7) {
            LpSolution sol;
            sol.status = LpSolution::Status::Infeasible;
            return sol;
        }
        // Drive any artificial still basic (at zero) out of the basis.
        for (int i = 0; i < m; ++i) {
            if (tb.basis[i] >= 2 * n + m) {
                int col = -1;
                for (int j = 0; j < 2 * n + m; ++j) {
                    if (std::abs(tb.t(i, j)) > kEps) {
                        col = j;
                        break;
                    }
                }
                if (col >= 0) tb.pivot(i, col);
                // else: redundant row, artificial stays basic at zero
            }
        }
    }

    // Phase 2 objective.
    tb.t.row(m).setZero();
    for (int j = 0; j < n; ++j) {
        tb.obj(j) = -c[j];
        tb.obj(n + j) = c[j];
    }
    for (int i = 0; i < m; ++i) {
        const int bj = tb.basis[i];
        const double f = tb.obj(bj);
        if (std::abs(f) > 0.0) tb.t.row(m) -= f * tb.t.row(i);
    }

    while (true) {
        const auto s = tb.step(2 * n + m);
        if (s == Tableau::Step::Optimal) break;
        if (s == Tableau::Step::Unbounded) {
            LpSolution sol;
            sol.status = LpSolution::Status::Unbounded;
            return sol;
        }
    }

    LpSolution sol;
    sol.status = LpSolution::Status::Optimal;
    sol.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) {
        const int bj = tb.basis[i];
        if (bj < n) sol.x[bj] += tb.rhs(i);
        else if (bj < 2 * n) sol.x[bj - n] -= tb.rhs(i);
    }
    sol.value = sol.x.size() ? c.dot(sol.x) : 0.0;
    return sol;
}

}  // namespace hipsim
