#include "hipsim/process/world.hpp"

#include "hipsim/error.hpp"
#include "hipsim/rng.hpp"

#include <cmath>

namespace hipsim {

WorldOracle::WorldOracle(DirectionalModel model, std::uint64_t seed)
    : model_(std::move(model)), seed_(seed)
{
}

void WorldOracle::materialize(int annulus) const
{
    while (static_cast<int>(annuli_.size()) <= annulus) {
        const int k = static_cast<int>(annuli_.size());
        Engine rng = stream_engine(seed_, static_cast<std::uint64_t>(k));
        // Intensity of {|s| in (k, k+1]} is 2 gamma per unit annulus width.
        std::poisson_distribution<int> count(2.0 * model_.gamma());
        const int n = count(rng);
        std::vector<Record> recs;
        recs.reserve(n);
        std::uniform_real_distribution<double> offset(static_cast<double>(k), static_cast<double>(k + 1));
        std::bernoulli_distribution side(0.5);
        for (int i = 0; i < n; ++i) {
            Vec u = model_.sample_direction(rng);
            const double s_abs = offset(rng);
            const double s = side(rng) ? -s_abs : s_abs;
            recs.push_back(Record{make_hyperplane(std::move(u), s), s_abs});
        }
        annuli_.push_back(std::move(recs));
    }
}

void WorldOracle::extend_to(double radius)
{
    if (radius < radius_)
        throw ShrinkNotAllowed("WorldOracle::extend_to: cannot shrink the sampled window");
    if (radius == radius_) return;
    materialize(static_cast<int>(std::ceil(radius)) - 1);
    radius_ = radius;
    dirty_ = true;
}

void WorldOracle::refresh() const
{
    exposed_.clear();
    birth_.clear();
    const int top = std::min(static_cast<int>(annuli_.size()), static_cast<int>(std::ceil(radius_)));
    for (int k = 0; k < top; ++k) {
        for (const Record& r : annuli_[k]) {
            if (r.s_abs <= radius_) {
                exposed_.push_back(r.h);
                birth_.push_back(k);
            }
        }
    }
    dirty_ = false;
}

const std::vector<Hyperplane>& WorldOracle::hyperplanes() const
{
    if (dirty_) refresh();
    return exposed_;
}

const std::vector<int>& WorldOracle::birth_annulus() const
{
    if (dirty_) refresh();
    return birth_;
}

std::vector<std::size_t> WorldOracle::hitting_indices(const ConvexBody& k, double slack) const
{
    if (k.outradius() > radius_)
        throw WindowTooSmall("WorldOracle::hitting_subset: body extends beyond the sampled ball");
    const auto& hs = hyperplanes();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (hits(k, hs[i], slack)) idx.push_back(i);
    }
    return idx;
}

std::vector<Hyperplane> WorldOracle::hitting_subset(const ConvexBody& k, double slack) const
{
    std::vector<Hyperplane> out;
    for (std::size_t i : hitting_indices(k, slack)) out.push_back(hyperplanes()[i]);
    return out;
}

WorldOracle sample_hitting(const DirectionalModel& model, double radius, std::uint64_t seed)
{
    if (radius < 0.0) throw Error("sample_hitting: negative radius");
    WorldOracle w(model, seed);
    w.extend_to(radius);
    return w;
}

}  // namespace hipsim
