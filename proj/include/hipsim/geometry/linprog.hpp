#pragma once

#include <Eigen/Dense>

namespace hipsim {

// Dense two-phase simplex for the tiny LPs behind polytope construction
// (feasibility, Chebyshev centre, recession directions).  Problem sizes are
// a handful of variables and at most a few hundred constraints.
struct LpSolution {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Eigen::VectorXd x;
    double value = 0.0;
};

// maximize c.x  subject to  A x <= b, x free.  Bland's rule, so termination
// is guaranteed; tolerances assume inputs at desk scale (unit-norm rows).
LpSolution lp_maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace hipsim
