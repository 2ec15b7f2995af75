#include "hipsim/geometry/hyperplane.hpp"

#include "hipsim/error.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace hipsim {

namespace {

constexpr double kSignEps = 1e-12;

void fix_sign(Vec& u, double& s)
{
    for (int i = 0; i < u.size(); ++i) {
        if (std::abs(u[i]) > kSignEps) {
            if (u[i] < 0.0) {
                u = -u;
                s = -s;
            }
            return;
        }
    }
}

}  // namespace

Hyperplane make_hyperplane(Vec direction, double offset)
{
    const double n = direction.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw Error("make_hyperplane: zero or non-finite direction");
    Vec u = direction / n;
    double s = offset / n;
    fix_sign(u, s);
    return Hyperplane{std::move(u), s};
}

bool is_canonical(const Hyperplane& h, double eps)
{
    if (std::abs(h.u.norm() - 1.0) > eps) return false;
    for (int i = 0; i < h.u.size(); ++i) {
        if (std::abs(h.u[i]) > kSignEps) return h.u[i] > 0.0;
    }
    return false;
}

std::optional<Vec> span_normal(std::span<const Vec> pts, double tol)
{
    const int d = static_cast<int>(pts[0].size());

    if (d == 2) {
        const Vec e = pts[1] - pts[0];
        const double len = e.norm();
        if (len <= tol) return std::nullopt;
        Vec n(2);
        n[0] = -e[1];
        n[1] = e[0];
        return n / len;
    }
    if (d == 3) {
        const Vec a = pts[1] - pts[0];
        const Vec b = pts[2] - pts[0];
        Vec n(3);
        n[0] = a[1] * b[2] - a[2] * b[1];
        n[1] = a[2] * b[0] - a[0] * b[2];
        n[2] = a[0] * b[1] - a[1] * b[0];
        const double area = n.norm();
        if (area <= tol * a.norm() * b.norm()) return std::nullopt;
        return n / area;
    }

    // General d: smallest right singular vector of the difference matrix.
    Eigen::MatrixXd diff(d - 1, d);
    double edge_prod = 1.0;
    for (int i = 1; i < d; ++i) {
        const Vec e = pts[i] - pts[0];
        edge_prod *= e.norm();
        diff.row(i - 1) = e.transpose();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff, Eigen::ComputeFullV);
    double vol = 1.0;
    for (int i = 0; i < d - 1; ++i) vol *= svd.singularValues()[i];
    if (vol <= tol * edge_prod) return std::nullopt;
    Vec n = svd.matrixV().col(d - 1);
    return n;
}

Hyperplane hyperplane_through_points(std::span<const Vec> pts, double tol)
{
    if (pts.empty()) throw TooFewPoints("hyperplane_through_points: no points");
    const int d = static_cast<int>(pts[0].size());
    if (static_cast<int>(pts.size()) != d)
        throw TooFewPoints("hyperplane_through_points: expected exactly d points");
    auto n = span_normal(pts, tol);
    if (!n) throw AffinelyDependent("hyperplane_through_points: affinely dependent points");
    return make_hyperplane(*n, n->dot(pts[0]));
}

bool in_general_hyperplane_position(std::span<const Vec> pts, double tol)
{
    const int n = static_cast<int>(pts.size());
    if (n == 0) throw TooFewPoints("in_general_hyperplane_position: no points");
    const int d = static_cast<int>(pts[0].size());
    if (n < d) throw TooFewPoints("in_general_hyperplane_position: fewer than d points");

    // Common hyperplane from the first d points; incidence slack scales with
    // the point cloud.
    std::optional<Vec> normal = span_normal(pts.subspan(0, d), tol);
    if (!normal) return false;
    const double s = normal->dot(pts[0]);
    double scale = 0.0;
    for (const Vec& p : pts) scale = std::max(scale, p.template lpNorm<Eigen::Infinity>());
    const double slack = tol_at(tol, scale);
    for (const Vec& p : pts) {
        if (std::abs(normal->dot(p) - s) > slack) return false;
    }

    // Every d-subset must be affinely independent.
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    std::vector<Vec> sub(d);
    while (true) {
        for (int i = 0; i < d; ++i) sub[i] = pts[idx[i]];
        if (!span_normal(sub, tol)) return false;
        int k = d - 1;
        while (k >= 0 && idx[k] == n - d + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
    return true;
}

}  // namespace hipsim
