#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hipsim/error.hpp"
#include "hipsim/geometry/flat.hpp"
#include "hipsim/intersection/annulus.hpp"
#include "hipsim/intersection/points.hpp"
#include "hipsim/stats/fitting.hpp"
#include "hipsim/stats/summary.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace hipsim;
using namespace hipsim::testing;

namespace {

const double kPi = std::numbers::pi;

std::vector<Hyperplane> triangle_lines()
{
    return {line(1, 0, 0), line(0, 1, 0), line(1, 1, 1)};
}

}  // namespace

TEST_CASE("intersection points: worked examples")
{
    const ConvexBody disk = ConvexBody::ball(v2(0, 0), 1.0);

    const std::vector<Hyperplane> axes = {line(1, 0, 0), line(0, 1, 0)};
    const auto one = intersection_points(axes, disk);
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0].x.norm() == doctest::Approx(0.0));
    CHECK(one.points[0].parents == std::vector<int>{0, 1});
    CHECK(one.near_singular_skipped == 0);

    std::vector<Hyperplane> parallel;
    for (int i = 0; i < 5; ++i) parallel.push_back(line(1, 0, 0.1 * i));
    const auto none = intersection_points(parallel, disk);
    CHECK(none.points.empty());
    CHECK(none.near_singular_skipped == 10);  // all C(5,2) pairs

    const ConvexBody big = ConvexBody::ball(v2(0, 0), 5.0);
    const auto tri = intersection_points(triangle_lines(), big);
    REQUIRE(tri.points.size() == 3);
    // Lexicographic parent-tuple order.
    CHECK(tri.points[0].parents == std::vector<int>{0, 1});
    CHECK(tri.points[1].parents == std::vector<int>{0, 2});
    CHECK(tri.points[2].parents == std::vector<int>{1, 2});
    CHECK((tri.points[1].x - v2(0, 1)).norm() == doctest::Approx(0.0));
    CHECK((tri.points[2].x - v2(1, 0)).norm() == doctest::Approx(0.0));

    // The window filter really applies: shrink until the triangle corners fall out.
    const ConvexBody tiny = ConvexBody::ball(v2(0, 0), 0.5);
    CHECK(intersection_points(triangle_lines(), tiny).points.size() == 1);

    CHECK(intersection_points(std::vector<Hyperplane>{line(1, 0, 0)}, disk).points.empty());
    CHECK(intersection_points(std::vector<Hyperplane>{}, disk).points.empty());
}

TEST_CASE("intersection points match subset enumeration")
{
    const auto model2 = DirectionalModel::isotropic(2, 1.0);
    const auto model3 = DirectionalModel::isotropic(3, 0.6);
    int nonempty = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const bool d3 = seed % 3 == 0;
        const auto w = sample_hitting(d3 ? model3 : model2, 3.5, seed);
        if (w.hyperplanes().size() > 25) continue;
        const ConvexBody window =
            d3 ? ConvexBody::ball(v3(0.3, -0.2, 0.1), 2.0) : ConvexBody::ball(v2(0.3, -0.2), 2.0);
        const auto mine = intersection_points(w.hyperplanes(), window);
        const auto oracle = brute_intersection_points(w.hyperplanes(), window);
        REQUIRE(mine.points.size() == oracle.size());
        nonempty += !oracle.empty();
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            CHECK(mine.points[i].parents == oracle[i].parents);
            CHECK((mine.points[i].x - oracle[i].x).norm() <= 1e-9 * std::max(1.0, oracle[i].x.norm()));
        }
    }
    CHECK(nonempty > 60);
}

TEST_CASE("intersection measure of order m: worked examples")
{
    const ConvexBody disk = ConvexBody::ball(v2(0, 0), 1.5);
    const std::vector<Hyperplane> chord = {line(0, 1, 0)};
    const auto m1 = phi_m_measure(chord, 1, disk);
    CHECK(m1.total == doctest::Approx(3.0));  // diameter of the 1.5-disk
    REQUIRE(m1.contributions.size() == 1);
    CHECK(m1.contributions[0].parents == std::vector<int>{0});

    const ConvexBody big = ConvexBody::ball(v2(0, 0), 5.0);
    const auto tri2 = phi_m_measure(triangle_lines(), 2, big);
    CHECK(tri2.total == doctest::Approx(3.0));  // three simple corners, unit mass each
    CHECK(tri2.contributions.size() == 3);
    const auto pts = intersection_points(triangle_lines(), big);
    CHECK(static_cast<double>(pts.points.size()) == doctest::Approx(tri2.total));

    // Order-1 measure of the triangle family: chord lengths inside the disk.
    // Two diameters plus the chord of the line at distance 1/sqrt(2).
    const auto tri1 = phi_m_measure(triangle_lines(), 1, big);
    CHECK(tri1.contributions.size() == 3);
    CHECK(tri1.total == doctest::Approx(20.0 + 2.0 * std::sqrt(24.5)));

    CHECK_THROWS_AS(phi_m_measure(chord, 0, disk), Error);
    CHECK_THROWS_AS(phi_m_measure(chord, 3, disk), Error);

    // Parallel pair contributes nothing but is tallied, not an error.
    const std::vector<Hyperplane> par = {line(1, 0, 0), line(1, 0, 1)};
    const auto deg = phi_m_measure(par, 2, big);
    CHECK(deg.total == 0.0);
    CHECK(deg.degenerate_skipped == 1);
}

TEST_CASE("intersection measure internal consistency on random worlds")
{
    const auto model = DirectionalModel::isotropic(2, 1.0);
    const ConvexBody window = ConvexBody::ball(v2(0, 0), 2.0);
    const ConvexBody nested = ConvexBody::ball(v2(0, 0), 1.0);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const auto w = sample_hitting(model, 2.0, seed);
        const auto& hs = w.hyperplanes();
        for (int m = 1; m <= 2; ++m) {
            const auto full = phi_m_measure(hs, m, window);
            double acc = 0.0;
            for (const auto& c : full.contributions) {
                CHECK(c.measure > 0.0);
                CHECK(std::is_sorted(c.parents.begin(), c.parents.end()));
                acc += c.measure;
            }
            CHECK(full.total == doctest::Approx(acc).epsilon(1e-12));
            CHECK(phi_m_total(hs, m, window) == doctest::Approx(full.total).epsilon(1e-12));
            // Monotone in the window.
            CHECK(phi_m_total(hs, m, nested) <= full.total + 1e-12);
        }
    }
}

TEST_CASE("mean intersection measures match the product-form intensities")
{
    // E Phi_1(W) = gamma * area(W); E Phi_2(W) = (gamma^2 / pi) * area(W)
    // for the isotropic planar model.
    const auto model = DirectionalModel::isotropic(2, 1.0);
    const ConvexBody disk = ConvexBody::ball(v2(0, 0), 1.0);
    std::vector<double> phi1, phi2;
    for (std::uint64_t seed = 0; seed < 1500; ++seed) {
        const auto w = sample_hitting(model, 1.0, seed + 31000);
        phi1.push_back(phi_m_total(w.hyperplanes(), 1, disk));
        phi2.push_back(phi_m_total(w.hyperplanes(), 2, disk));
    }
    const auto s1 = summarize(phi1);
    const auto s2 = summarize(phi2);
    CHECK(std::abs(s1.mean - kPi) <= 3.5 * s1.se_mean);
    CHECK(std::abs(s2.mean - 1.0) <= 3.5 * s2.se_mean);
}

TEST_CASE("intersection point process is simple")
{
    const auto model = DirectionalModel::isotropic(2, 1.0);
    const ConvexBody window = ConvexBody::ball(v2(0, 0), 3.0);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto w = sample_hitting(model, 3.0, seed);
        const auto pts = intersection_points(w.hyperplanes(), window);
        for (std::size_t i = 0; i < pts.points.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.points.size(); ++j) {
                CHECK((pts.points[i].x - pts.points[j].x).norm() > 1e-9);
            }
        }
    }
}

TEST_CASE("mean point count scales with the square of the window radius")
{
    const auto model = DirectionalModel::isotropic(2, 1.0);
    const double radii[] = {2.0, 4.0, 8.0};
    std::vector<double> logr, logmean;
    for (double r : radii) {
        std::vector<double> counts;
        for (std::uint64_t seed = 0; seed < 400; ++seed) {
            const auto w = sample_hitting(model, r, seed + 400 * static_cast<std::uint64_t>(r));
            counts.push_back(phi_m_total(w.hyperplanes(), 2, ConvexBody::ball(v2(0, 0), r)));
        }
        logr.push_back(std::log(r));
        logmean.push_back(std::log(summarize(counts).mean));
    }
    const auto fit = fit_line(logr, logmean);
    CHECK(std::abs(fit.slope - 2.0) < 0.2);
}

TEST_CASE("annulus queries partition and order the shell")
{
    const auto model = DirectionalModel::isotropic(2, 1.2);
    const ConvexBody k = ConvexBody::ball(v2(0, 0), 1.0);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        WorldOracle w(model, seed);
        CHECK(points_in_annulus(w, k, 1.0, 1.0).empty());

        const auto lo = points_in_annulus(w, k, 0.0, 1.0);
        const auto hi = points_in_annulus(w, k, 1.0, 2.0);
        const auto all = points_in_annulus(w, k, 0.0, 2.0);
        REQUIRE(all.size() == lo.size() + hi.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            const AnnulusPoint& ref = i < lo.size() ? lo[i] : hi[i - lo.size()];
            CHECK(all[i].dist == ref.dist);
            CHECK(all[i].parents == ref.parents);
            CHECK((all[i].x - ref.x).norm() == 0.0);
        }

        double last = 0.0;
        for (const auto& p : all) {
            CHECK(p.dist > 0.0);
            CHECK(p.dist <= 2.0);
            CHECK(p.dist == doctest::Approx(k.distance(p.x)));
            CHECK(p.dist >= last);
            last = p.dist;
            // Parent indices reproduce the point.
            const Hyperplane pair[] = {w.hyperplanes()[p.parents[0]], w.hyperplanes()[p.parents[1]]};
            const auto f = intersect_hyperplanes(pair);
            REQUIRE(f.has_value());
            CHECK((f->anchor - p.x).norm() <= 1e-9 * std::max(1.0, p.x.norm()));
        }

        // Same result when the oracle was grown in a different pattern first.
        WorldOracle fresh(model, seed);
        const auto direct = points_in_annulus(fresh, k, 0.0, 2.0);
        REQUIRE(direct.size() == all.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            CHECK(direct[i].dist == all[i].dist);
            CHECK((direct[i].x - all[i].x).norm() == 0.0);
        }

        CHECK_THROWS_AS(points_in_annulus(w, k, 2.0, 1.0), Error);
        CHECK_THROWS_AS(points_in_annulus(w, k, -0.5, 1.0), Error);
    }
}

TEST_CASE("point source agrees with the batch annulus query")
{
    const auto model = DirectionalModel::isotropic(2, 1.0);
    const ConvexBody k = ConvexBody::ball(v2(0, 0), 1.0);
    const double budget = 3.0;
    for (std::uint64_t seed = 50; seed < 90; ++seed) {
        WorldOracle wa(model, seed);
        OraclePointSource src(wa, k);
        std::vector<ObservedPoint> emitted;
        while (auto p = src.next(budget)) emitted.push_back(*p);
        CHECK_FALSE(src.next(budget).has_value());  // exhaustion is stable

        WorldOracle wb(model, seed);
        const auto batch = points_in_annulus(wb, k, 0.0, budget);
        REQUIRE(emitted.size() == batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i) {
            CHECK(emitted[i].dist == doctest::Approx(batch[i].dist).epsilon(1e-12));
            CHECK((emitted[i].x - batch[i].x).norm() <= 1e-12 * std::max(1.0, batch[i].x.norm()));
        }

        // The source never looks further than one blind step past what it
        // needed to confirm: budget exhaustion caps the frontier near budget.
        CHECK(src.frontier() >= budget);
        CHECK(wa.current_radius() <= k.outradius() + budget + 2.0 + 1e-12);
    }
}

TEST_CASE("point source confirms points in distance order under a growing budget")
{
    const auto model = DirectionalModel::isotropic(2, 1.0);
    const ConvexBody k = ConvexBody::ball(v2(0.2, -0.4), 0.8);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        WorldOracle w(model, seed + 900);
        OraclePointSource src(w, k);
        std::vector<ObservedPoint> emitted;
        for (double budget = 0.5; budget <= 4.0; budget += 0.5) {
            while (auto p = src.next(budget)) {
                CHECK(p->dist <= budget);
                emitted.push_back(*p);
            }
        }
        for (std::size_t i = 1; i < emitted.size(); ++i) {
            CHECK(emitted[i].dist >= emitted[i - 1].dist);
        }
        // Stepwise consumption sees exactly the full-budget stream.
        WorldOracle w2(model, seed + 900);
        OraclePointSource direct(w2, k);
        std::size_t n = 0;
        while (auto p = direct.next(4.0)) {
            REQUIRE(n < emitted.size());
            CHECK(p->dist == emitted[n].dist);
            ++n;
        }
        CHECK(n == emitted.size());
    }
}
