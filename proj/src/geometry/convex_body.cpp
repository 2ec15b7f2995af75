#include "hipsim/geometry/convex_body.hpp"

#include "hipsim/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace hipsim {

ConvexBody ConvexBody::ball(Vec centre, double radius)
{
    if (!(radius > 0.0)) throw Error("ConvexBody::ball: radius must be positive");
    ConvexBody b;
    b.kind_ = Kind::Ball;
    b.dim_ = static_cast<int>(centre.size());
    b.centre_ = std::move(centre);
    b.radius_ = radius;
    return b;
}

ConvexBody ConvexBody::box(Vec lo, Vec hi)
{
    const int d = static_cast<int>(lo.size());
    if (hi.size() != d) throw Error("ConvexBody::box: dimension mismatch");
    for (int i = 0; i < d; ++i) {
        if (!(lo[i] < hi[i])) throw Error("ConvexBody::box: lo must be strictly below hi");
    }
    ConvexBody b;
    b.kind_ = Kind::Box;
    b.dim_ = d;
    b.lo_ = std::move(lo);
    b.hi_ = std::move(hi);
    b.halfspaces_.reserve(2 * d);
    for (int i = 0; i < d; ++i) {
        Vec n = Vec::Zero(d);
        n[i] = 1.0;
        b.halfspaces_.push_back(Halfspace{n, b.hi_[i]});
        b.halfspaces_.push_back(Halfspace{-n, -b.lo_[i]});
    }
    const int corners = 1 << d;
    b.vertices_.reserve(corners);
    for (int mask = 0; mask < corners; ++mask) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? b.hi_[i] : b.lo_[i];
        b.vertices_.push_back(std::move(v));
    }
    return b;
}

ConvexBody ConvexBody::polytope(std::vector<Halfspace> hs, double tol)
{
    Polytope p = halfspace_polytope(hs, tol);  // throws EmptyIntersection
    if (!p.bounded) throw Unbounded("ConvexBody::polytope: unbounded halfspace intersection");
    ConvexBody b;
    b.kind_ = Kind::Polytope;
    b.dim_ = hs[0].dim();
    b.halfspaces_ = std::move(hs);
    b.vertices_ = std::move(p.vertices);
    return b;
}

double ConvexBody::support(const Vec& u) const
{
    switch (kind_) {
        case Kind::Ball:
            return centre_.dot(u) + radius_ * u.norm();
        case Kind::Box: {
            double s = 0.0;
            for (int i = 0; i < dim_; ++i) s += u[i] >= 0.0 ? hi_[i] * u[i] : lo_[i] * u[i];
            return s;
        }
        case Kind::Polytope: {
            double s = -std::numeric_limits<double>::infinity();
            for (const Vec& v : vertices_) s = std::max(s, v.dot(u));
            return s;
        }
    }
    return 0.0;
}

bool ConvexBody::contains(const Vec& x, double slack) const
{
    switch (kind_) {
        case Kind::Ball:
            return (x - centre_).norm() <= radius_ + slack;
        case Kind::Box:
            for (int i = 0; i < dim_; ++i) {
                if (x[i] < lo_[i] - slack || x[i] > hi_[i] + slack) return false;
            }
            return true;
        case Kind::Polytope:
            for (const Halfspace& h : halfspaces_) {
                if (h.slack(x) < -slack) return false;
            }
            return true;
    }
    return false;
}

double ConvexBody::distance(const Vec& x) const
{
    switch (kind_) {
        case Kind::Ball:
            return std::max(0.0, (x - centre_).norm() - radius_);
        case Kind::Box: {
            double s2 = 0.0;
            for (int i = 0; i < dim_; ++i) {
                const double g = std::max({lo_[i] - x[i], 0.0, x[i] - hi_[i]});
                s2 += g * g;
            }
            return std::sqrt(s2);
        }
        case Kind::Polytope:
            if (contains(x)) return 0.0;
            return distance_to_hull(vertices_, x);
    }
    return 0.0;
}

double ConvexBody::outradius() const
{
    switch (kind_) {
        case Kind::Ball:
            return centre_.norm() + radius_;
        case Kind::Box: {
            double s2 = 0.0;
            for (int i = 0; i < dim_; ++i) s2 += std::max(lo_[i] * lo_[i], hi_[i] * hi_[i]);
            return std::sqrt(s2);
        }
        case Kind::Polytope: {
            double r = 0.0;
            for (const Vec& v : vertices_) r = std::max(r, v.norm());
            return r;
        }
    }
    return 0.0;
}

Vec ConvexBody::centre_hint() const
{
    switch (kind_) {
        case Kind::Ball:
            return centre_;
        case Kind::Box:
            return 0.5 * (lo_ + hi_);
        case Kind::Polytope: {
            Vec c = Vec::Zero(dim_);
            for (const Vec& v : vertices_) c += v;
            return c / static_cast<double>(vertices_.size());
        }
    }
    return Vec();
}

ConvexBody scaled_body(const ConvexBody& k, double factor)
{
    if (!(factor > 0.0)) throw Error("scaled_body: factor must be positive");
    switch (k.kind()) {
        case ConvexBody::Kind::Ball:
            return ConvexBody::ball(factor * k.ball_centre(), factor * k.ball_radius());
        case ConvexBody::Kind::Box: {
            Vec lo(k.dim()), hi(k.dim());
            for (int i = 0; i < k.dim(); ++i) {
                Vec e = Vec::Zero(k.dim());
                e[i] = 1.0;
                hi[i] = factor * k.support(e);
                lo[i] = -factor * k.support(-e);
            }
            return ConvexBody::box(lo, hi);
        }
        case ConvexBody::Kind::Polytope: {
            auto hs = k.halfspaces();
            for (auto& h : hs) h.offset *= factor;
            return ConvexBody::polytope(std::move(hs));
        }
    }
    throw Error("scaled_body: unknown body kind");
}

bool hits(const ConvexBody& k, const Hyperplane& h, double slack)
{
    return h.s <= k.support(h.u) + slack && -h.s <= k.support(-h.u) + slack;
}

Halfspace halfspace_containing(const Hyperplane& h, const ConvexBody& k)
{
    if (k.support(h.u) <= h.s) return Halfspace{h.u, h.s};
    if (k.support(-h.u) <= -h.s) return Halfspace{-h.u, -h.s};
    throw Error("halfspace_containing: hyperplane intersects the body");
}

double distance_to_hull(const std::vector<Vec>& vertices, const Vec& x)
{
    const int d = static_cast<int>(x.size());
    const int n = static_cast<int>(vertices.size());
    if (n == 0) throw Error("distance_to_hull: empty vertex set");

    double best = std::numeric_limits<double>::infinity();
    for (const Vec& v : vertices) best = std::min(best, (v - x).norm());

    // Project onto the affine hull of every independent subset of size
    // 2..d+1 and keep projections with non-negative convex coordinates.  The
    // true projection appears among these (Caratheodory plus orthogonality),
    // so the minimum is exact.
    std::vector<int> idx;
    const int kmax = std::min(n, d + 1);
    for (int k = 2; k <= kmax; ++k) {
        idx.assign(k, 0);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            Eigen::MatrixXd basis(d, k - 1);
            for (int i = 1; i < k; ++i) basis.col(i - 1) = vertices[idx[i]] - vertices[idx[0]];
            const Eigen::MatrixXd gram = basis.transpose() * basis;
            const Eigen::VectorXd rhs = basis.transpose() * (x - vertices[idx[0]]);
            const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
            if (ldlt.info() == Eigen::Success) {
                const Eigen::VectorXd lam = ldlt.solve(rhs);
                if ((gram * lam - rhs).norm() <= 1e-9 * (1.0 + rhs.norm())) {
                    double lam0 = 1.0;
                    bool ok = true;
                    for (int i = 0; i < k - 1; ++i) {
                        if (lam[i] < -1e-12) ok = false;
                        lam0 -= lam[i];
                    }
                    if (ok && lam0 >= -1e-12) {
                        Vec proj = vertices[idx[0]];
                        for (int i = 1; i < k; ++i) proj += lam[i - 1] * (vertices[idx[i]] - vertices[idx[0]]);
                        best = std::min(best, (proj - x).norm());
                    }
                }
            }
            int j = k - 1;
            while (j >= 0 && idx[j] == n - k + j) --j;
            if (j < 0) break;
            ++idx[j];
            for (int t = j + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
        }
    }
    return best;
}

bool enclosure_checks(const Polytope& p, const ConvexBody& k, double r, double tol)
{
    if (!p.bounded) throw Unbounded("enclosure_checks: polytope is unbounded");
    double scale = 1.0;
    for (const Halfspace& h : p.halfspaces) scale = std::max(scale, std::abs(h.offset));
    const double eps = tol * scale;
    for (const Halfspace& h : p.halfspaces) {
        if (k.support(h.normal) >= h.offset - eps) return false;  // K touches or crosses a facet
    }
    for (const Vec& v : p.vertices) {
        if (k.distance(v) > r + eps) return false;
    }
    return true;
}

}  // namespace hipsim
