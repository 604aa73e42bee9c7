#ifndef MFHRR_MILNOR_HPP
#define MFHRR_MILNOR_HPP

#include <optional>
#include <vector>

#include "mfhrr/groebner.hpp"
#include "mfhrr/linalg.hpp"

namespace mfhrr {

// Jacobian ring data of an isolated singularity: Groebner basis of the ideal
// (d_1 w, ..., d_n w), its standard-monomial basis and the Milnor number,
// plus the membership data driving the residue transformation law.
struct ResidueData {
    std::vector<int> powers;                          // N_i with x_i^{N_i} in the Jacobian ideal
    std::vector<std::vector<MultiPoly>> cofactor_matrix;  // x_i^{N_i} = sum_j T[i][j] * d_j w
    MultiPoly det_t;
};

struct MilnorRing {
    RingPtr ring;
    MultiPoly w;
    std::vector<MultiPoly> jacobian;  // the partials, in variable order
    GroebnerBasis jacobian_gb;
    std::vector<Monomial> basis;  // standard monomials
    long mu = 0;
    std::optional<std::vector<Rational>> weights;  // empty = not quasi-homogeneous
    // Absent when no pure variable power lies in the Jacobian ideal (critical
    // points away from the origin); residue() then refuses to run.
    std::optional<ResidueData> residue_data;
};

// Throws non_isolated_error when the Milnor number diverges. A missing weight
// system is recorded in `weights` but is not an error here.
MilnorRing milnor_ring(const MultiPoly& w);

// Minimal powers N_i with x_i^{N_i} in the Jacobian ideal, with cofactors
// against the original partials; recomputed from scratch.
ResidueData variable_power_membership(const MilnorRing& mr);

// Same, for caller-chosen powers (each must lie in the ideal).
ResidueData membership_with_powers(const MilnorRing& mr, const std::vector<int>& powers);

// Grothendieck residue Res[g dx / (d_1 w, ..., d_n w)] via the transformation
// law: the coefficient of prod x_i^{N_i - 1} in g * det T.
Rational residue(const MultiPoly& g, const MilnorRing& mr);
Rational residue_with(const MultiPoly& g, const MilnorRing& mr, const ResidueData& data);

// Normal form of g against the Jacobian ideal.
MultiPoly milnor_normal_form(const MultiPoly& g, const MilnorRing& mr);

// Gram matrix of the residue pairing on the standard-monomial basis.
QMatrix residue_pairing_matrix(const MilnorRing& mr);

}  // namespace mfhrr

#endif
