#ifndef MFHRR_GROEBNER_HPP
#define MFHRR_GROEBNER_HPP

#include <optional>
#include <vector>

#include "mfhrr/poly.hpp"

namespace mfhrr {

// Element of a free module R^r, stored as its component polynomials. Rank 1
// recovers the ideal case.
using ModuleElem = std::vector<MultiPoly>;

ModuleElem module_zero(const RingPtr& ring, int rank);
bool module_is_zero(const ModuleElem& v);
ModuleElem module_add(const ModuleElem& a, const ModuleElem& b);
ModuleElem module_sub(const ModuleElem& a, const ModuleElem& b);
ModuleElem module_scaled(const ModuleElem& a, const Rational& c);
ModuleElem module_times_term(const ModuleElem& a, const Monomial& m, const Rational& c);

// Leading term of a module element under the position-over-term extension of
// a monomial order: lower position wins, then the base order on monomials.
struct LeadTerm {
    int pos = 0;
    Monomial mon;
    Rational coeff;
};

LeadTerm module_lead_term(const ModuleElem& v, const MonomialOrder& ord);

// compare_pot > 0 iff a is larger; positions compare inverted (lower = larger).
int compare_pot(const LeadTerm& a, const LeadTerm& b, const MonomialOrder& ord);

struct GroebnerBasis {
    RingPtr ring;
    int rank = 1;
    MonomialOrder order;
    bool reduced = false;
    std::vector<ModuleElem> generators;
    std::vector<LeadTerm> leads;  // cached lead terms, one per generator
    // generators[i] = sum_j transform[i][j] * input[j]; kept so callers can
    // express division cofactors in terms of the original input.
    std::vector<std::vector<MultiPoly>> transform;
    std::size_t n_input = 0;
};

// Buchberger completion with the coprime (ideal case only) and chain
// criteria, followed by minimalization and inter-reduction to the unique
// reduced monic basis.
GroebnerBasis buchberger(const std::vector<ModuleElem>& gens, const MonomialOrder& order);

struct DivisionRecord {
    ModuleElem remainder;
    std::vector<MultiPoly> cofactors;  // one per basis generator
};

// Full normal form: input = sum_i cofactors[i]*generators[i] + remainder and
// no remainder term is divisible by any leading term. The identity is
// re-verified by direct arithmetic before returning.
DivisionRecord normal_form_with_cofactors(const ModuleElem& f, const GroebnerBasis& gb);

// Cofactors rewritten against the original input generators via gb.transform.
std::vector<MultiPoly> cofactors_on_input(const DivisionRecord& rec, const GroebnerBasis& gb);

// Generators of { v in R^c : m * v = 0 } for an r x c matrix over R, via the
// graph construction in R^{r+c} and position elimination.
std::vector<ModuleElem> syzygy_basis(const std::vector<std::vector<MultiPoly>>& m,
                                     const RingPtr& ring, const MonomialOrder& order);

// Standard monomials (position, monomial) of R^rank modulo the submodule, or
// nullopt when the quotient is infinite-dimensional.
std::optional<std::vector<std::pair<int, Monomial>>> standard_monomials(const GroebnerBasis& gb);

// Number of standard monomials; nullopt = INFINITE.
std::optional<long> quotient_dim(const GroebnerBasis& gb);

}  // namespace mfhrr

#endif
