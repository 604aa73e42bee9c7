#ifndef MFHRR_EXT_HPP
#define MFHRR_EXT_HPP

#include <string>
#include <utility>
#include <vector>

#include "mfhrr/mf.hpp"
#include "mfhrr/milnor.hpp"

namespace mfhrr {

// Z/2-graded Hom complex between factorizations of the same w, flattened into
// free modules. A morphism is a (dim q) x (dim p) matrix; the differential is
// D(f) = delta_q f - (-1)^{|f|} f delta_p.
struct HomComplex {
    RingPtr ring;
    MultiPoly w;
    MatrixFactorization p, q;
    std::vector<std::pair<int, int>> even_basis;  // (row in q, col in p)
    std::vector<std::pair<int, int>> odd_basis;
    PolyMatrix d_even;  // even -> odd, rows indexed by odd_basis
    PolyMatrix d_odd;   // odd -> even, rows indexed by even_basis

    int even_rank() const { return static_cast<int>(even_basis.size()); }
    int odd_rank() const { return static_cast<int>(odd_basis.size()); }
};

// Builds the complex and verifies D_odd D_even = D_even D_odd = 0 exactly.
HomComplex hom_complex(const MatrixFactorization& p, const MatrixFactorization& q);

// Component of a morphism matrix of the given parity (entries whose row and
// column parities differ by `parity`).
PolyMatrix morphism_parity_part(const HomComplex& h, const PolyMatrix& z, int parity);

// Whether the parity-homogeneous morphism z is a cocycle.
bool morphism_is_closed(const HomComplex& h, const PolyMatrix& z, int parity);

struct ExtResult {
    long dim_even = 0;
    long dim_odd = 0;
    long euler = 0;  // dim_even - dim_odd
    std::string method;
};

// Kernel-modulo-image dimensions through module Groebner bases (syzygy
// presentation of the kernel, image rewritten in kernel coordinates, then a
// standard-monomial count). Throws infinite_dimensional_error when the
// quotient diverges.
ExtResult ext_dims_groebner(const HomComplex& h);

// Independent oracle: decompose into finite weighted-degree slices and run
// exact rank-nullity per slice. Throws not_gradable_error when weights or
// internal degrees are unavailable.
ExtResult ext_dims_graded(const HomComplex& h, const MilnorRing* mr = nullptr);

// Explicit cocycle representatives spanning Ext, with a coordinate functional
// modulo exact morphisms.
struct ExtBasis {
    HomComplex h;
    long dim_even = 0, dim_odd = 0;

    struct Side {
        bool trivial = false;  // zero kernel
        std::vector<ModuleElem> kernel_gens;
        GroebnerBasis gb_kernel;
        GroebnerBasis gb_quot;  // image + kernel relations, inside R^{|kernel_gens|}
        bool quot_free = false; // no image and no relations
        std::vector<std::pair<int, Monomial>> std_mons;
    };
    Side even, odd;
    std::vector<PolyMatrix> reps;  // even representatives first, then odd

    // Coefficients of the class of z on the basis of the given parity.
    std::vector<Rational> coordinates(const PolyMatrix& z, int parity) const;
};

ExtBasis ext_basis(const HomComplex& h);

// Euler characteristic chi(p, q); groebner method, cross-checked against the
// graded oracle whenever the input is gradable.
long euler_char(const MatrixFactorization& p, const MatrixFactorization& q);

// Supertrace of c |-> (-1)^{|alpha||c|} beta . c . alpha on Ext(p, q).
// alpha and beta are closed endomorphism matrices of p and q (checked).
Rational cardy_lhs(const MatrixFactorization& p, const MatrixFactorization& q,
                   const PolyMatrix& alpha, const PolyMatrix& beta);
Rational cardy_lhs_with(const ExtBasis& eb, const PolyMatrix& alpha, const PolyMatrix& beta);

}  // namespace mfhrr

#endif
