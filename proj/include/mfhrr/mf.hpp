#ifndef MFHRR_MF_HPP
#define MFHRR_MF_HPP

#include <optional>
#include <string>
#include <vector>

#include "mfhrr/forms.hpp"

namespace mfhrr {

// Matrix factorization of w: a Z/2-graded free module E = E0 + E1 with an odd
// operator delta = [[0, d1], [d0, 0]] satisfying delta^2 = w * id.
// d1 : E1 -> E0 is r0 x r1; d0 : E0 -> E1 is r1 x r0.
struct MatrixFactorization {
    RingPtr ring;
    MultiPoly w;
    int r0 = 0, r1 = 0;
    PolyMatrix d1;
    PolyMatrix d0;
    // Weighted internal degrees of the basis elements (E0 first, then E1),
    // used by the graded Ext oracle; optional.
    std::optional<std::vector<Rational>> degrees;
    std::string descr;

    int dim() const { return r0 + r1; }
    int index_parity(int i) const { return i < r0 ? 0 : 1; }
};

// Full (r0+r1) x (r0+r1) matrix of delta.
PolyMatrix delta_matrix(const MatrixFactorization& m);

struct MfCheck {
    bool ok = true;
    std::string message;  // names the first failing entry when !ok
};

// Checks d1*d0 = w*I and d0*d1 = w*I exactly; never throws.
MfCheck validate_mf(const MatrixFactorization& m);

// Rank 1|1 factorization (a, b) of w = a*b.
MatrixFactorization koszul_mf(const MultiPoly& a, const MultiPoly& b);

// Tensor product of factorizations: a factorization of w1 + w2, over the
// merged ring. delta = delta_m (x) 1 + 1 (x) delta_n with the Koszul sign on
// the second factor.
MatrixFactorization tensor_mf(const MatrixFactorization& m, const MatrixFactorization& n);

// Suspension [1]: swap the blocks and negate both differentials.
MatrixFactorization shift_mf(const MatrixFactorization& m);

// Dual factorization of -w: transposed blocks with the super sign.
MatrixFactorization dual_mf(const MatrixFactorization& m);

// Block-diagonal direct sum; requires equal w.
MatrixFactorization sum_mf(const MatrixFactorization& m, const MatrixFactorization& n);

// Infer internal degrees from quasi-homogeneous weights by propagating the
// homogeneity constraint deg(delta_ij) = 1/2 + t_j - t_i across nonzero
// entries. Returns nullopt when an entry is inhomogeneous or constraints
// conflict.
std::optional<std::vector<Rational>> infer_degrees(const MatrixFactorization& m,
                                                   const std::vector<Rational>& weights);

// Degrees from the factorization itself (stored or inferred).
std::optional<std::vector<Rational>> ensure_degrees(const MatrixFactorization& m);

}  // namespace mfhrr

#endif
