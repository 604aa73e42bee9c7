#ifndef MFHRR_FORMS_HPP
#define MFHRR_FORMS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "mfhrr/poly.hpp"

namespace mfhrr {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

PolyMatrix poly_matrix_zero(const RingPtr& ring, int rows, int cols);
PolyMatrix poly_matrix_identity(const RingPtr& ring, int n);
PolyMatrix poly_matrix_add(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix_sub(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix_mul(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix_scaled(const PolyMatrix& a, const Rational& c);
PolyMatrix poly_matrix_neg(const PolyMatrix& a);
PolyMatrix poly_matrix_transpose(const PolyMatrix& a);
bool poly_matrix_is_zero(const PolyMatrix& a);
bool poly_matrix_eq(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix poly_matrix_lift(const PolyMatrix& a, const RingPtr& ring);

// Element of the exterior algebra R<dx_1..dx_n>: subsets of {1..n} stored as
// bitmasks with sorted-index sign normalization.
struct FormPoly {
    RingPtr ring;
    std::map<std::uint32_t, MultiPoly> terms;  // index set -> coefficient

    FormPoly() = default;
    explicit FormPoly(RingPtr r) : ring(std::move(r)) {}

    bool is_zero() const { return terms.empty(); }
    void add(std::uint32_t mask, const MultiPoly& coeff);
    FormPoly operator+(const FormPoly& o) const;
    FormPoly operator-() const;
    FormPoly scaled(const Rational& c) const;

    // Coefficient of dx_1 ^ ... ^ dx_n.
    MultiPoly top_coefficient() const;

    friend bool operator==(const FormPoly& a, const FormPoly& b) { return a.terms == b.terms; }

    std::string str() const;
};

// Sign of dx_I ^ dx_J as a reordering into dx_{I union J}; 0 when they meet.
int wedge_sign(std::uint32_t i_mask, std::uint32_t j_mask);

FormPoly wedge(const FormPoly& a, const FormPoly& b);

// Z/2-graded matrix with differential-form entries, stored componentwise as
// dx_I tensor (polynomial matrix). Block ranks r0 (even) and r1 (odd); row or
// column index i has parity [i >= r0].
struct SuperMatrixForm {
    RingPtr ring;
    int r0 = 0, r1 = 0;
    std::map<std::uint32_t, PolyMatrix> comps;

    SuperMatrixForm() = default;
    SuperMatrixForm(RingPtr r, int even, int odd) : ring(std::move(r)), r0(even), r1(odd) {}

    int dim() const { return r0 + r1; }
    int index_parity(int i) const { return i < r0 ? 0 : 1; }
    bool is_zero() const { return comps.empty(); }

    void add_component(std::uint32_t mask, const PolyMatrix& m);

    static SuperMatrixForm identity(const RingPtr& ring, int r0, int r1);
    static SuperMatrixForm from_matrix(const RingPtr& ring, int r0, int r1, const PolyMatrix& m);

    SuperMatrixForm operator+(const SuperMatrixForm& o) const;
    SuperMatrixForm operator-() const;
    SuperMatrixForm scaled(const Rational& c) const;

    friend bool operator==(const SuperMatrixForm& a, const SuperMatrixForm& b) {
        return a.r0 == b.r0 && a.r1 == b.r1 && a.comps == b.comps;
    }

    // Entry (i, j) as a form.
    FormPoly entry(int i, int j) const;

    // Splits into total-parity-homogeneous parts (form degree + block parity).
    SuperMatrixForm parity_part(int parity) const;
    bool is_homogeneous(int parity) const;
};

// Product in Omega tensor End(E): for a = dx_I (x) A and b = dx_J (x) B with A
// split into block-even/block-odd parts, a*b = (-1)^{|A| |J|} dx_I^dx_J (x) AB.
SuperMatrixForm wedge_mul(const SuperMatrixForm& a, const SuperMatrixForm& b);

// Supertrace: sum_i (-1)^{parity(i)} entry(i,i); vanishes on supercommutators.
FormPoly supertrace(const SuperMatrixForm& m);

// Entrywise exterior derivative of a polynomial matrix with the given block
// structure: (i,j) |-> sum_k d_k(m_ij) dx_k.
SuperMatrixForm entrywise_d(const PolyMatrix& m, const RingPtr& ring, int r0, int r1);

// sum_{p=0}^{n} m^p / p!; exact because every component of m has form degree
// at least one. Throws error when a degree-zero component is present.
SuperMatrixForm exp_truncated(const SuperMatrixForm& m);

}  // namespace mfhrr

#endif
