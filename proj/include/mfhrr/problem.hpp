#ifndef MFHRR_PROBLEM_HPP
#define MFHRR_PROBLEM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mfhrr/mf.hpp"

namespace mfhrr {

// One verification problem: a ring, a potential, named factorizations, and
// optional named endomorphisms for Cardy runs.
//
// File grammar (line oriented, '#' comments):
//   ring x, y
//   w = x^3 + y^3
//   mf P = koszul(x, x^2)
//   mf Q = tensor(P, koszul(y, y^2))
//   mf E = explicit{d1 = [[...],[...]], d0 = [[...],[...]], degrees = [0, 1/2]}
//   endo alpha on P = [[0, 1], [-x, 0]]
//   pair P Q
//   cardy alpha beta
struct NamedEndo {
    std::string name;
    std::string mf_name;
    PolyMatrix matrix;
};

struct ProblemFile {
    std::string name;     // label for battery listings
    std::string command;  // requested command ("verify" or "cardy"); battery uses it
    RingPtr ring;
    MultiPoly w;
    std::vector<std::pair<std::string, MatrixFactorization>> mfs;
    std::vector<NamedEndo> endos;
    std::optional<std::pair<std::string, std::string>> pair_names;
    std::optional<std::pair<std::string, std::string>> cardy_names;

    const MatrixFactorization& mf(const std::string& n) const;
    const NamedEndo& endo(const std::string& n) const;

    // The (P, Q) a verify/ext run acts on: the declared pair, else the first
    // two factorizations, else the single one against itself.
    std::pair<const MatrixFactorization*, const MatrixFactorization*> hrr_pair() const;
    // The (alpha, beta) a cardy run acts on, with the same defaulting.
    std::pair<const NamedEndo*, const NamedEndo*> cardy_pair() const;
};

// Parses and validates a problem file: every factorization must satisfy
// delta^2 = w id (or -w for duals) and endomorphism shapes must match their
// factorization. Throws input_error with a line reference.
ProblemFile parse_problem(const std::string& text);

// The factorization expression language, also usable standalone:
// name | koszul(p, q) | tensor(E, E) | dual(E) | shift(E) | sum(E, E) |
// explicit{d1=[[..]], d0=[[..]][, degrees=[..]]}.
MatrixFactorization parse_mf_expression(
    const std::string& text, const RingPtr& ring,
    const std::vector<std::pair<std::string, MatrixFactorization>>& named);

}  // namespace mfhrr

#endif
