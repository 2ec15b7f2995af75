#include "hipsim/geometry/polytope.hpp"

#include "hipsim/error.hpp"
#include "hipsim/geometry/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>

namespace hipsim {

namespace {

Eigen::MatrixXd normal_matrix(const std::vector<Halfspace>& hs)
{
    const int m = static_cast<int>(hs.size());
    const int d = hs[0].dim();
    Eigen::MatrixXd a(m, d);
    for (int i = 0; i < m; ++i) a.row(i) = hs[i].normal.transpose();
    return a;
}

Eigen::VectorXd offset_vector(const std::vector<Halfspace>& hs)
{
    Eigen::VectorXd b(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) b[i] = hs[i].offset;
    return b;
}

bool lp_feasible(const std::vector<Halfspace>& hs)
{
    Eigen::VectorXd c = Eigen::VectorXd::Zero(hs[0].dim());
    const auto sol = lp_maximize(normal_matrix(hs), offset_vector(hs), c);
    return sol.status != LpSolution::Status::Infeasible;
}

// The intersection is bounded iff the recession cone {y : <n_i,y> <= 0} is
// trivial; probe it along each signed axis inside the unit box.
bool recession_trivial(const std::vector<Halfspace>& hs)
{
    const int d = hs[0].dim();
    const int m = static_cast<int>(hs.size());
    Eigen::MatrixXd a(m + 2 * d, d);
    Eigen::VectorXd b(m + 2 * d);
    for (int i = 0; i < m; ++i) {
        a.row(i) = hs[i].normal.transpose();
        b[i] = 0.0;
    }
    for (int j = 0; j < d; ++j) {
        a.row(m + 2 * j).setZero();
        a(m + 2 * j, j) = 1.0;
        b[m + 2 * j] = 1.0;
        a.row(m + 2 * j + 1).setZero();
        a(m + 2 * j + 1, j) = -1.0;
        b[m + 2 * j + 1] = 1.0;
    }
    for (int j = 0; j < d; ++j) {
        for (double sgn : {1.0, -1.0}) {
            Eigen::VectorXd c = Eigen::VectorXd::Zero(d);
            c[j] = sgn;
            const auto sol = lp_maximize(a, b, c);
            if (sol.status == LpSolution::Status::Optimal && sol.value > 1e-7) return false;
        }
    }
    return true;
}

// Chebyshev centre: maximises the minimum slack; the slack value is returned
// through *slack_out.  Assumes unit normals.
std::optional<Vec> chebyshev_centre(const std::vector<Halfspace>& hs, double* slack_out)
{
    const int d = hs[0].dim();
    const int m = static_cast<int>(hs.size());
    Eigen::MatrixXd a(m + 1, d + 1);
    Eigen::VectorXd b(m + 1);
    for (int i = 0; i < m; ++i) {
        a.block(i, 0, 1, d) = hs[i].normal.transpose();
        a(i, d) = 1.0;
        b[i] = hs[i].offset;
    }
    a.row(m).setZero();
    a(m, d) = 1.0;
    b[m] = 1e6;  // keeps the LP bounded for unbounded regions
    Eigen::VectorXd c = Eigen::VectorXd::Zero(d + 1);
    c[d] = 1.0;
    const auto sol = lp_maximize(a, b, c);
    if (sol.status != LpSolution::Status::Optimal) return std::nullopt;
    *slack_out = sol.x[d];
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = sol.x[i];
    return x;
}

// ---------------------------------------------------------------------------
// 2D: incremental boundary walk (labelled polygon clipping)

struct Poly2 {
    std::vector<Vec> v;
    std::vector<int> edge;  // edge[k] labels segment v[k] -> v[k+1]
};

Vec seg_cross(const Vec& a, const Vec& b, const Vec& n, double c)
{
    const double da = n.dot(a) - c;
    const double db = n.dot(b) - c;
    double t = da / (da - db);
    t = std::clamp(t, 0.0, 1.0);
    return a + t * (b - a);
}

Poly2 clip(const Poly2& p, const Vec& n, double c, int id, double eps)
{
    Poly2 out;
    const int sz = static_cast<int>(p.v.size());
    for (int k = 0; k < sz; ++k) {
        const Vec& cur = p.v[k];
        const Vec& nxt = p.v[(k + 1) % sz];
        const bool in_cur = n.dot(cur) <= c + eps;
        const bool in_nxt = n.dot(nxt) <= c + eps;
        if (in_cur && in_nxt) {
            out.v.push_back(cur);
            out.edge.push_back(p.edge[k]);
        } else if (in_cur && !in_nxt) {
            out.v.push_back(cur);
            out.edge.push_back(p.edge[k]);
            out.v.push_back(seg_cross(cur, nxt, n, c));
            out.edge.push_back(id);  // chord runs along the clipping line
        } else if (!in_cur && in_nxt) {
            out.v.push_back(seg_cross(cur, nxt, n, c));
            out.edge.push_back(p.edge[k]);
        }
    }
    return out;
}

bool bounded_2d(const std::vector<Halfspace>& hs)
{
    std::vector<double> ang;
    ang.reserve(hs.size());
    for (const auto& h : hs) ang.push_back(std::atan2(h.normal[1], h.normal[0]));
    std::sort(ang.begin(), ang.end());
    double gap_max = 2.0 * std::numbers::pi - (ang.back() - ang.front());
    for (std::size_t i = 1; i < ang.size(); ++i) gap_max = std::max(gap_max, ang[i] - ang[i - 1]);
    return gap_max < std::numbers::pi - 1e-12;
}

Polytope polytope_2d(const std::vector<Halfspace>& hs, double tol)
{
    Polytope p;
    p.halfspaces = hs;

    if (!bounded_2d(hs)) {
        if (!lp_feasible(hs)) throw EmptyIntersection("halfspace_polytope: infeasible");
        p.bounded = false;
        return p;
    }

    // Every vertex solves a 2x2 boundary pair, which bounds the polytope and
    // gives a safe starting box for the walk.
    const int m = static_cast<int>(hs.size());
    double reach = 1.0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Vec& a = hs[i].normal;
            const Vec& b = hs[j].normal;
            const double det = a[0] * b[1] - a[1] * b[0];
            if (std::abs(det) < 1e-9) continue;
            const double x = (hs[i].offset * b[1] - hs[j].offset * a[1]) / det;
            const double y = (a[0] * hs[j].offset - b[0] * hs[i].offset) / det;
            reach = std::max({reach, std::abs(x), std::abs(y)});
        }
    }
    const double big = 4.0 * (reach + 1.0);

    Poly2 poly;
    poly.v = {make_vec({-big, -big}), make_vec({big, -big}), make_vec({big, big}), make_vec({-big, big})};
    poly.edge = {-1, -1, -1, -1};

    double scale = 1.0;
    for (const auto& h : hs) scale = std::max(scale, std::abs(h.offset));
    const double eps = tol * scale;

    for (int i = 0; i < m; ++i) {
        poly = clip(poly, hs[i].normal, hs[i].offset, i, eps);
        if (poly.v.empty()) throw EmptyIntersection("halfspace_polytope: infeasible");
    }

    // Merge consecutive near-duplicate vertices; keep each edge label once.
    const double vtx_eps = 1e3 * eps;
    std::set<int> act;
    const int sz = static_cast<int>(poly.v.size());
    for (int k = 0; k < sz; ++k) {
        const Vec& cur = poly.v[k];
        const Vec& nxt = poly.v[(k + 1) % sz];
        if ((nxt - cur).norm() > vtx_eps && poly.edge[k] >= 0) act.insert(poly.edge[k]);
        if (p.vertices.empty() || (cur - p.vertices.back()).norm() > vtx_eps) p.vertices.push_back(cur);
    }
    if (p.vertices.size() > 1 && (p.vertices.front() - p.vertices.back()).norm() <= vtx_eps)
        p.vertices.pop_back();
    if (p.vertices.empty()) throw EmptyIntersection("halfspace_polytope: infeasible");
    p.bounded = true;
    p.active.assign(act.begin(), act.end());
    return p;
}

// ---------------------------------------------------------------------------
// 3D: polar dual convex hull around an interior point

struct HullFace {
    int a, b, c;
    Eigen::Vector3d n;
    double off;
    bool alive = true;
};

// Incremental hull; points are assumed to span 3D (guaranteed for duals of
// bounded full-dimensional polytopes).
std::vector<HullFace> convex_hull_3d(const std::vector<Eigen::Vector3d>& pts)
{
    const int n = static_cast<int>(pts.size());
    if (n < 4) throw Error("convex_hull_3d: fewer than 4 points");

    double scale = 0.0;
    for (const auto& p : pts) scale = std::max(scale, p.norm());
    const double eps = 1e-10 * std::max(scale, 1.0);

    // Initial tetrahedron from well-separated points.
    int i0 = 0, i1 = -1;
    for (int i = 1; i < n; ++i) {
        if (i1 < 0 || (pts[i] - pts[i0]).norm() > (pts[i1] - pts[i0]).norm()) i1 = i;
    }
    int i2 = -1;
    double best = eps;
    for (int i = 0; i < n; ++i) {
        const double a = ((pts[i1] - pts[i0]).cross(pts[i] - pts[i0])).norm();
        if (a > best) {
            best = a;
            i2 = i;
        }
    }
    if (i2 < 0) throw Error("convex_hull_3d: degenerate input (collinear)");
    const Eigen::Vector3d n012 = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]);
    int i3 = -1;
    best = eps * std::max(n012.norm(), 1.0);
    for (int i = 0; i < n; ++i) {
        const double v = std::abs(n012.dot(pts[i] - pts[i0]));
        if (v > best) {
            best = v;
            i3 = i;
        }
    }
    if (i3 < 0) throw Error("convex_hull_3d: degenerate input (coplanar)");

    const Eigen::Vector3d centroid = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
    std::vector<HullFace> faces;
    auto add_face = [&](int a, int b, int c) {
        HullFace f;
        f.a = a;
        f.b = b;
        f.c = c;
        f.n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
        f.off = f.n.dot(pts[a]);
        if (f.n.dot(centroid) > f.off) {  // orient outward
            std::swap(f.b, f.c);
            f.n = -f.n;
            f.off = -f.off;
        }
        faces.push_back(f);
    };
    add_face(i0, i1, i2);
    add_face(i0, i1, i3);
    add_face(i0, i2, i3);
    add_face(i1, i2, i3);

    for (int i = 0; i < n; ++i) {
        if (i == i0 || i == i1 || i == i2 || i == i3) continue;
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            if (!faces[f].alive) continue;
            const double fs = std::max(faces[f].n.norm(), 1.0);
            if (faces[f].n.dot(pts[i]) > faces[f].off + eps * fs) visible.push_back(f);
        }
        if (visible.empty()) continue;

        // Horizon: edges of visible faces seen exactly once.
        std::map<std::pair<int, int>, std::pair<int, int>> edges;  // undirected -> directed
        for (int f : visible) {
            const int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
            for (int e = 0; e < 3; ++e) {
                const int u = vs[e];
                const int v = vs[(e + 1) % 3];
                const auto key = std::minmax(u, v);
                auto it = edges.find(key);
                if (it == edges.end()) edges.emplace(key, std::make_pair(u, v));
                else edges.erase(it);
            }
        }
        for (int f : visible) faces[f].alive = false;
        for (const auto& [key, dir] : edges) add_face(dir.first, dir.second, i);
    }

    std::vector<HullFace> out;
    for (auto& f : faces) {
        if (f.alive) out.push_back(f);
    }
    return out;
}

Polytope polytope_3d(const std::vector<Halfspace>& hs, double tol)
{
    (void)tol;  // 3d path uses fixed geometric epsilons below
    Polytope p;
    p.halfspaces = hs;

    double slack = 0.0;
    const auto centre = chebyshev_centre(hs, &slack);
    if (!centre) throw EmptyIntersection("halfspace_polytope: infeasible");
    if (!recession_trivial(hs)) {
        p.bounded = false;
        return p;
    }
    if (slack <= 1e-9)
        throw Error("halfspace_polytope: lower-dimensional intersection not supported in 3D");

    // Polar dual: halfspace i maps to n_i / slack_i; hull facets map back to
    // primal vertices, hull vertices to active halfspaces.
    const Vec& x0 = *centre;
    std::vector<Eigen::Vector3d> dual(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const double si = hs[i].offset - hs[i].normal.dot(x0);
        dual[i] = Eigen::Vector3d(hs[i].normal[0], hs[i].normal[1], hs[i].normal[2]) / si;
    }
    const auto faces = convex_hull_3d(dual);

    double scale = 1.0;
    for (const auto& h : hs) scale = std::max(scale, std::abs(h.offset));
    const double vtx_eps = 1e-6 * scale;

    std::set<int> act;
    for (const auto& f : faces) {
        Eigen::Matrix3d m;
        m.row(0) = dual[f.a].transpose();
        m.row(1) = dual[f.b].transpose();
        m.row(2) = dual[f.c].transpose();
        const Eigen::Vector3d w = m.partialPivLu().solve(Eigen::Vector3d::Ones());
        Vec v(3);
        for (int i = 0; i < 3; ++i) v[i] = x0[i] + w[i];
        bool dup = false;
        for (const Vec& u : p.vertices) {
            if ((u - v).norm() <= vtx_eps) {
                dup = true;
                break;
            }
        }
        if (!dup) p.vertices.push_back(v);
        act.insert(f.a);
        act.insert(f.b);
        act.insert(f.c);
    }
    p.bounded = true;
    p.active.assign(act.begin(), act.end());
    return p;
}

}  // namespace

Polytope halfspace_polytope(const std::vector<Halfspace>& hs, double tol)
{
    if (hs.empty()) throw Error("halfspace_polytope: no halfspaces");
    const int d = hs[0].dim();
    if (d == 2) return polytope_2d(hs, tol);
    if (d == 3) return polytope_3d(hs, tol);
    throw UnsupportedDimension("halfspace_polytope: vertex enumeration only for d in {2,3}");
}

}  // namespace hipsim
