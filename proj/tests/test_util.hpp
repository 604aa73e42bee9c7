#ifndef MFHRR_TEST_UTIL_HPP
#define MFHRR_TEST_UTIL_HPP

#include <random>

#include "mfhrr/poly.hpp"

namespace mfhrr::testutil {

// Deterministic generator shared by the randomized property suites.
inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed1234);
    return gen;
}

inline int rand_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng());
}

inline Rational rand_rational() {
    int num = rand_int(-9, 9);
    int den = rand_int(1, 9);
    return Rational(num, den);
}

inline Rational rand_nonzero_rational() {
    Rational r = rand_rational();
    return r.is_zero() ? Rational(1) : r;
}

// Small random polynomial: up to max_terms terms, exponents below max_exp.
inline MultiPoly rand_poly(const RingPtr& ring, int max_terms = 4, int max_exp = 3) {
    MultiPoly p(ring);
    int terms = rand_int(0, max_terms);
    for (int t = 0; t < terms; ++t) {
        Monomial m(ring->nvars());
        for (int i = 0; i < ring->nvars(); ++i) m.e[static_cast<std::size_t>(i)] = rand_int(0, max_exp);
        p.add_term(m, rand_rational());
    }
    return p;
}

inline MultiPoly rand_nonzero_poly(const RingPtr& ring, int max_terms = 4, int max_exp = 3) {
    for (int tries = 0; tries < 100; ++tries) {
        MultiPoly p = rand_poly(ring, max_terms, max_exp);
        if (!p.is_zero()) return p;
    }
    return MultiPoly::constant(ring, Rational(1));
}

}  // namespace mfhrr::testutil

#endif
