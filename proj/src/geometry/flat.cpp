#include "hipsim/geometry/flat.hpp"

#include "hipsim/error.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace hipsim {

std::optional<Flat> intersect_hyperplanes(std::span<const Hyperplane> hs, double tol)
{
    if (hs.empty()) throw Error("intersect_hyperplanes: no hyperplanes");
    const int d = hs[0].dim();
    const int m = static_cast<int>(hs.size());
    if (m > d) throw Error("intersect_hyperplanes: more hyperplanes than dimensions");

    Eigen::MatrixXd a(m, d);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
        a.row(i) = hs[i].u.transpose();
        b[i] = hs[i].s;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv[0] : 0.0;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] > tol * std::max(smax, 1.0)) ++rank;
    }

    // Minimum-norm solution through the pseudoinverse.
    Eigen::VectorXd ut_b = svd.matrixU().transpose() * b;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < rank; ++i) y[i] = ut_b[i] / sv[i];
    Eigen::VectorXd x = svd.matrixV() * y;

    const double residual = (a * x - b).norm();
    if (residual > tol_at(tol, b.cwiseAbs().maxCoeff())) return std::nullopt;

    Flat f;
    f.dim = d - rank;
    f.anchor = x;
    f.degenerate = rank < m;
    f.directions.reserve(f.dim);
    for (int i = rank; i < d; ++i) f.directions.push_back(Vec(svd.matrixV().col(i)));
    return f;
}

double distance_to_flat(const Flat& f, const Vec& x)
{
    Vec r = x - f.anchor;
    for (const Vec& v : f.directions) r -= v.dot(r) * v;
    return r.norm();
}

Vec flat_point(const Flat& f, std::span<const double> coords)
{
    Vec p = f.anchor;
    for (std::size_t i = 0; i < coords.size(); ++i) p += coords[i] * f.directions[i];
    return p;
}

}  // namespace hipsim
