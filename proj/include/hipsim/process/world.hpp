#pragma once

#include "hipsim/common.hpp"
#include "hipsim/geometry/convex_body.hpp"
#include "hipsim/geometry/hyperplane.hpp"
#include "hipsim/process/model.hpp"

#include <cstdint>
#include <vector>

namespace hipsim {

// Lazily extensible realization of the hyperplane process restricted to
// centred balls: after extend_to(R) the oracle exposes exactly the
// hyperplanes with |s| <= R.
//
// Draws are organised in unit annuli on |s| with one RNG stream per
// (seed, annulus), so the exposed realization is a pure function of
// (model, seed, R): extension history never changes or reorders it, and
// extend-then-extend agrees bit for bit with direct sampling at the final
// radius.
class WorldOracle {
public:
    WorldOracle(DirectionalModel model, std::uint64_t seed);

    void extend_to(double radius);  // throws ShrinkNotAllowed

    double current_radius() const { return radius_; }
    const DirectionalModel& model() const { return model_; }
    std::uint64_t seed() const { return seed_; }

    // Exposed hyperplanes (|s| <= current_radius) in canonical draw order,
    // with the annulus each was born in.
    const std::vector<Hyperplane>& hyperplanes() const;
    const std::vector<int>& birth_annulus() const;

    // Subset hitting K.  K must fit inside the sampled ball
    // (outradius(K) <= current_radius), else WindowTooSmall.
    std::vector<Hyperplane> hitting_subset(const ConvexBody& k, double slack = 0.0) const;
    std::vector<std::size_t> hitting_indices(const ConvexBody& k, double slack = 0.0) const;

private:
    struct Record {
        Hyperplane h;
        double s_abs;
    };

    void materialize(int annulus) const;
    void refresh() const;

    DirectionalModel model_;
    std::uint64_t seed_ = 0;
    double radius_ = 0.0;
    mutable std::vector<std::vector<Record>> annuli_;
    mutable std::vector<Hyperplane> exposed_;
    mutable std::vector<int> birth_;
    mutable bool dirty_ = false;
};

// Fresh realization hitting B(0, radius).
WorldOracle sample_hitting(const DirectionalModel& model, double radius, std::uint64_t seed);

}  // namespace hipsim
