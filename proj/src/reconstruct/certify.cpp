#include "hipsim/reconstruct/certify.hpp"

#include "hipsim/error.hpp"

#include <algorithm>
#include <numeric>

namespace hipsim {

EnclosureFamily build_enclosure_family(std::span<const Hyperplane> xi, const ConvexBody& k,
                                       const ReconstructionParams& params)
{
    EnclosureFamily fam;
    if (xi.empty()) return fam;
    const int d = xi[0].dim();
    const int count = params.resolved_polytope_count(d);

    std::vector<int> remaining(xi.size());
    std::iota(remaining.begin(), remaining.end(), 0);

    double required = 0.0;
    fam.polytopes.reserve(count);
    for (int c = 0; c < count; ++c) {
        if (static_cast<int>(remaining.size()) < d + 1) return fam;

        std::vector<Halfspace> hs;
        hs.reserve(remaining.size());
        for (int i : remaining) hs.push_back(halfspace_containing(xi[i], k));

        Polytope p;
        try {
            p = halfspace_polytope(hs, params.gp_tol);
        } catch (const EmptyIntersection&) {
            return fam;  // cannot happen when every halfspace contains K
        }
        if (!p.bounded) return fam;

        // Same slack convention as enclosure_checks.
        double scale = 1.0;
        for (const Halfspace& h : p.halfspaces) scale = std::max(scale, std::abs(h.offset));
        const double eps = params.gp_tol * scale;
        for (const Halfspace& h : p.halfspaces) {
            if (k.support(h.normal) >= h.offset - eps) return fam;  // K touches a facet
        }
        for (const Vec& v : p.vertices) {
            required = std::max(required, k.distance(v) - eps);
        }

        std::vector<bool> used(remaining.size(), false);
        for (int a : p.active) used[a] = true;
        std::vector<int> rest;
        rest.reserve(remaining.size());
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (!used[i]) rest.push_back(remaining[i]);
        }
        fam.polytopes.push_back(std::move(p));
        remaining = std::move(rest);
    }
    fam.required_radius = required;
    fam.complete = true;
    return fam;
}

std::optional<std::vector<Polytope>> certify_enclosure(std::span<const Hyperplane> xi,
                                                       const ConvexBody& k, double r,
                                                       const ReconstructionParams& params)
{
    EnclosureFamily fam = build_enclosure_family(xi, k, params);
    if (!fam.certifies(r)) return std::nullopt;
    return std::move(fam.polytopes);
}

}  // namespace hipsim
