#include "hipsim/geometry/measures.hpp"

#include "hipsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hipsim {

namespace {

// Nearest point of the flat to x (directions orthonormal).
Vec project_to_flat(const Flat& f, const Vec& x)
{
    Vec p = f.anchor;
    const Vec r = x - f.anchor;
    for (const Vec& v : f.directions) p += v.dot(r) * v;
    return p;
}

std::vector<Vec> clip_polygon(std::vector<Vec> poly, const Vec& n, double c, double eps)
{
    std::vector<Vec> out;
    const int sz = static_cast<int>(poly.size());
    for (int k = 0; k < sz; ++k) {
        const Vec& cur = poly[k];
        const Vec& nxt = poly[(k + 1) % sz];
        const double dc = n.dot(cur) - c;
        const double dn = n.dot(nxt) - c;
        const bool in_cur = dc <= eps;
        const bool in_nxt = dn <= eps;
        if (in_cur) out.push_back(cur);
        if (in_cur != in_nxt) {
            const double t = std::clamp(dc / (dc - dn), 0.0, 1.0);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    return out;
}

double shoelace(const std::vector<Vec>& poly)
{
    double a = 0.0;
    const int sz = static_cast<int>(poly.size());
    for (int k = 0; k < sz; ++k) {
        const Vec& p = poly[k];
        const Vec& q = poly[(k + 1) % sz];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * std::abs(a);
}

}  // namespace

double unit_ball_volume(int k)
{
    if (k == 0) return 1.0;
    return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double body_volume(const ConvexBody& b)
{
    switch (b.kind()) {
        case ConvexBody::Kind::Ball:
            return unit_ball_volume(b.dim()) * std::pow(b.ball_radius(), b.dim());
        case ConvexBody::Kind::Box: {
            double v = 1.0;
            for (int i = 0; i < b.dim(); ++i) {
                const Vec e = Vec::Unit(b.dim(), i);
                v *= b.support(e) + b.support(-e);
            }
            return v;
        }
        case ConvexBody::Kind::Polytope:
            if (b.dim() == 2) return shoelace(b.vertices());
            throw UnsupportedDimension("body_volume: polytope volume only for d = 2");
    }
    return 0.0;
}

std::pair<double, double> clip_line_to_body(const Vec& anchor, const Vec& dir, const ConvexBody& b)
{
    if (b.kind() == ConvexBody::Kind::Ball) {
        const Vec w = anchor - b.ball_centre();
        const double pb = w.dot(dir);
        const double q = w.squaredNorm() - b.ball_radius() * b.ball_radius();
        const double disc = pb * pb - q;
        if (disc <= 0.0) return {1.0, 0.0};
        const double s = std::sqrt(disc);
        return {-pb - s, -pb + s};
    }
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    for (const Halfspace& h : b.halfspaces()) {
        const double dv = h.normal.dot(dir);
        const double rhs = h.offset - h.normal.dot(anchor);
        if (std::abs(dv) < 1e-14) {
            if (rhs < 0.0) return {1.0, 0.0};
            continue;
        }
        const double t = rhs / dv;
        if (dv > 0.0) t1 = std::min(t1, t);
        else t0 = std::max(t0, t);
    }
    return {t0, t1};
}

std::vector<Vec> plane_section_polygon(const Flat& f, const ConvexBody& b)
{
    // Work in span coordinates (X, Y) -> anchor + X e1 + Y e2.
    const Vec& e1 = f.directions[0];
    const Vec& e2 = f.directions[1];
    const double reach = b.outradius() + f.anchor.norm() + 1.0;

    std::vector<Vec> poly = {make_vec({-reach, -reach}), make_vec({reach, -reach}),
                             make_vec({reach, reach}), make_vec({-reach, reach})};
    const double eps = 1e-12 * reach;
    for (const Halfspace& h : b.halfspaces()) {
        Vec n2 = make_vec({h.normal.dot(e1), h.normal.dot(e2)});
        const double c2 = h.offset - h.normal.dot(f.anchor);
        if (n2.norm() < 1e-14) {
            if (c2 < 0.0) return {};
            continue;
        }
        poly = clip_polygon(std::move(poly), n2, c2, eps);
        if (poly.empty()) return {};
    }
    return poly;
}

double flat_measure_in_window(const Flat& f, const ConvexBody& window)
{
    const int k = f.dim;
    if (k == 0) return window.contains(f.anchor) ? 1.0 : 0.0;

    if (window.kind() == ConvexBody::Kind::Ball) {
        const double dist = (window.ball_centre() - project_to_flat(f, window.ball_centre())).norm();
        const double r = window.ball_radius();
        if (dist >= r) return 0.0;
        const double rho = std::sqrt(r * r - dist * dist);
        return unit_ball_volume(k) * std::pow(rho, k);
    }

    if (k == 1) {
        const auto [t0, t1] = clip_line_to_body(f.anchor, f.directions[0], window);
        return std::max(0.0, t1 - t0);
    }
    if (k == 2 && f.ambient_dim() == 3) {
        const auto poly = plane_section_polygon(f, window);
        if (poly.size() < 3) return 0.0;
        return shoelace(poly);
    }
    throw UnsupportedDimension("flat_measure_in_window: unsupported flat dimension for this window");
}

}  // namespace hipsim
