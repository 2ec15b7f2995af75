#include "hipsim/process/model.hpp"

#include "hipsim/error.hpp"

#include <Eigen/SVD>

#include <cmath>

namespace hipsim {

namespace {

// Canonical sign: first coordinate with |u_i| > 1e-12 positive.
void canonical_sign(Vec& u)
{
    for (int i = 0; i < u.size(); ++i) {
        if (std::abs(u[i]) > 1e-12) {
            if (u[i] < 0.0) u = -u;
            return;
        }
    }
}

}  // namespace

DirectionalModel DirectionalModel::isotropic(int d, double gamma)
{
    if (d < 1) throw InvalidModel("DirectionalModel: dimension must be >= 1");
    if (!(gamma > 0.0)) throw InvalidModel("DirectionalModel: gamma must be positive");
    DirectionalModel m;
    m.dim_ = d;
    m.gamma_ = gamma;
    return m;
}

DirectionalModel DirectionalModel::atoms(int d, double gamma, std::vector<DirectionalAtom> atoms)
{
    if (d < 1) throw InvalidModel("DirectionalModel: dimension must be >= 1");
    if (!(gamma > 0.0)) throw InvalidModel("DirectionalModel: gamma must be positive");
    if (atoms.empty()) throw InvalidModel("DirectionalModel: empty atom set");

    DirectionalModel m;
    m.dim_ = d;
    m.gamma_ = gamma;
    for (auto& a : atoms) {
        if (a.direction.size() != d) throw InvalidModel("DirectionalModel: atom dimension mismatch");
        const double n = a.direction.norm();
        if (!(n > 0.0)) throw InvalidModel("DirectionalModel: zero atom direction");
        if (!(a.weight > 0.0)) throw InvalidModel("DirectionalModel: atom weights must be positive");
        Vec u = a.direction / n;
        canonical_sign(u);
        // Merge +-duplicates onto the canonical representative.
        bool merged = false;
        for (auto& b : m.atoms_) {
            if ((b.direction - u).norm() < 1e-12) {
                b.weight += a.weight;
                merged = true;
                break;
            }
        }
        if (!merged) m.atoms_.push_back(DirectionalAtom{std::move(u), a.weight});
    }

    double total = 0.0;
    for (const auto& a : m.atoms_) total += a.weight;
    for (auto& a : m.atoms_) a.weight /= total;

    m.cumulative_.reserve(m.atoms_.size());
    double acc = 0.0;
    for (const auto& a : m.atoms_) {
        acc += a.weight;
        m.cumulative_.push_back(acc);
    }
    m.cumulative_.back() = 1.0;
    return m;
}

bool DirectionalModel::spans_space() const
{
    if (is_isotropic()) return true;
    Eigen::MatrixXd span(static_cast<int>(atoms_.size()), dim_);
    for (int i = 0; i < span.rows(); ++i) span.row(i) = atoms_[i].direction.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(span);
    const auto& sv = svd.singularValues();
    return sv.size() >= dim_ && sv[dim_ - 1] > 1e-12;
}

Vec DirectionalModel::sample_direction(Engine& rng) const
{
    Vec u(dim_);
    if (is_isotropic()) {
        std::normal_distribution<double> normal(0.0, 1.0);
        double n = 0.0;
        do {
            for (int i = 0; i < dim_; ++i) u[i] = normal(rng);
            n = u.norm();
        } while (n < 1e-12);
        u /= n;
    } else {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const double x = unif(rng);
        std::size_t i = 0;
        while (i + 1 < cumulative_.size() && x > cumulative_[i]) ++i;
        u = atoms_[i].direction;
    }
    std::bernoulli_distribution flip(0.5);
    if (flip(rng)) u = -u;
    return u;
}

}  // namespace hipsim
