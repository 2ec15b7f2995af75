#pragma once

#include "hipsim/common.hpp"
#include "hipsim/rng.hpp"

#include <vector>

namespace hipsim {

struct DirectionalAtom {
    Vec direction;  // unit, canonical sign
    double weight = 0.0;
};

// Intensity gamma plus an even direction distribution: either the uniform
// measure on the sphere or a finite atom set.  Atoms are stored with one
// canonical representative per +-u pair; sampling flips the sign uniformly,
// so the sampled law is even by construction.
class DirectionalModel {
public:
    static DirectionalModel isotropic(int d, double gamma);
    // Atom directions need not be unit or sign-canonical; weights must be
    // positive and are normalised to sum to 1.  Throws InvalidModel on
    // structural problems (no atoms, zero direction, bad weight, dim
    // mismatch).  Spanning is not required here; see spans_space().
    static DirectionalModel atoms(int d, double gamma, std::vector<DirectionalAtom> atoms);

    int dim() const { return dim_; }
    double gamma() const { return gamma_; }
    bool is_isotropic() const { return atoms_.empty(); }
    const std::vector<DirectionalAtom>& atom_list() const { return atoms_; }

    // Whether the direction support spans R^d.  Sampling works either way
    // (a normal-concentrated process is still a hyperplane process), but the
    // tessellation results assume a spanning support, so estimator entry
    // points validate this.
    bool spans_space() const;

    // One direction draw including the uniform sign flip.
    Vec sample_direction(Engine& rng) const;

private:
    int dim_ = 0;
    double gamma_ = 0.0;
    std::vector<DirectionalAtom> atoms_;  // empty = isotropic
    std::vector<double> cumulative_;
};

}  // namespace hipsim
