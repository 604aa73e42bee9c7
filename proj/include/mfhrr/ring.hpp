#ifndef MFHRR_RING_HPP
#define MFHRR_RING_HPP

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfhrr/rational.hpp"

namespace mfhrr {

// Ambient polynomial ring k[x1..xn], identified by its ordered variable names.
struct Ring {
    std::vector<std::string> vars;

    int nvars() const { return static_cast<int>(vars.size()); }
    std::optional<int> index_of(const std::string& name) const;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> vars);

bool same_ring(const RingPtr& a, const RingPtr& b);

// Union of two variable lists, keeping a's order and appending b's new names.
RingPtr merge_rings(const RingPtr& a, const RingPtr& b);

// Exponent vector of a power product. Length always equals the ring's nvars.
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(int n) : e(static_cast<std::size_t>(n), 0) {}
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

    int nvars() const { return static_cast<int>(e.size()); }
    bool is_one() const;
    long total_degree() const;
    Rational weighted_degree(const std::vector<Rational>& weights) const;

    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& m) const;
    // Exact quotient; caller guarantees divisibility.
    Monomial operator/(const Monomial& m) const;

    friend Monomial lcm(const Monomial& a, const Monomial& b);
    friend Monomial gcd(const Monomial& a, const Monomial& b);
    friend bool coprime(const Monomial& a, const Monomial& b);

    // Canonical storage/equality order (plain lex on exponent vectors); this is
    // not a term order, just a total order for containers.
    auto operator<=>(const Monomial& m) const = default;

    std::string str(const Ring& ring) const;
};

// Global monomial orders: total, multiplicative, with 1 minimal.
struct MonomialOrder {
    enum class Kind { lex, degrevlex, wdegrevlex };
    Kind kind = Kind::degrevlex;
    std::vector<Rational> weights;  // used by wdegrevlex only

    static MonomialOrder lex() { return {Kind::lex, {}}; }
    static MonomialOrder degrevlex() { return {Kind::degrevlex, {}}; }
    static MonomialOrder wdegrevlex(std::vector<Rational> w) { return {Kind::wdegrevlex, std::move(w)}; }

    // <0, 0, >0 like strcmp; a greater result means a is larger in the order.
    int compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

}  // namespace mfhrr

#endif
