#ifndef MFHRR_POLY_HPP
#define MFHRR_POLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mfhrr/ring.hpp"

namespace mfhrr {

// Exact multivariate polynomial over Q. Terms are kept in a sorted map with no
// zero coefficients, so equality is plain structural equality.
class MultiPoly {
  public:
    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}
    MultiPoly(RingPtr ring, const Rational& c);

    static MultiPoly zero(RingPtr ring) { return MultiPoly(std::move(ring)); }
    static MultiPoly constant(RingPtr ring, const Rational& c) { return MultiPoly(std::move(ring), c); }
    static MultiPoly variable(const RingPtr& ring, int i, int power = 1);
    static MultiPoly term(RingPtr ring, Monomial m, const Rational& c);

    const RingPtr& ring() const { return ring_; }
    int nvars() const { return ring_ ? ring_->nvars() : 0; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t term_count() const { return terms_.size(); }
    long total_degree() const;  // -1 for the zero polynomial

    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const { return coefficient(Monomial(nvars())); }

    void add_term(const Monomial& m, const Rational& c);

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly scaled(const Rational& c) const;
    MultiPoly times_term(const Monomial& m, const Rational& c) const;
    MultiPoly pow(int e) const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    // Term with the largest monomial under ord; polynomial must be nonzero.
    std::pair<Monomial, Rational> leading_term(const MonomialOrder& ord) const;

    // Content (gcd of coefficients as a positive rational times sign of the
    // lex-leading coefficient); zero polynomial has content 0.
    Rational content() const;

    // Same polynomial in a ring that contains all of this ring's variables.
    MultiPoly lifted(const RingPtr& bigger) const;

    // Weighted degree of a monomial times x_i matches weights[i] bookkeeping.
    std::optional<Rational> homogeneous_weighted_degree(const std::vector<Rational>& weights) const;

    std::string str() const;

  private:
    RingPtr ring_;
    std::map<Monomial, Rational> terms_;
};

// --- calculus -------------------------------------------------------------

// Formal partial derivative with respect to variable index i (0-based).
MultiPoly partial_derivative(const MultiPoly& p, int i);

// Determinant of the matrix of second partials, computed exactly.
MultiPoly hessian_det(const MultiPoly& w);

// Positive rational weights u with sum_i u_i * a_i = 1 for every exponent
// vector a of w, when such weights exist. Underdetermined systems return the
// canonical solution minimizing the pairwise weight differences (so e.g.
// w = x*y yields (1/2, 1/2)).
std::optional<std::vector<Rational>> quasi_homogeneous_weights(const MultiPoly& w);

// --- text I/O ---------------------------------------------------------------

// Grammar: terms joined by '+'/'-'; a term is an optional rational coefficient
// (integer or a/b) joined by '*' to variable powers `var^k`. Whitespace is
// insignificant. `0` denotes the zero polynomial.
MultiPoly parse_poly(const std::string& text, const RingPtr& ring);

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace mfhrr

#endif
