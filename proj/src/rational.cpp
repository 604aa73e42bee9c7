#include "mfhrr/rational.hpp"

#include <ostream>

#include "mfhrr/errors.hpp"

namespace mfhrr {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw error("rational with zero denominator");
    v_.canonicalize();
}

Rational::Rational(mpz_class num, mpz_class den) : v_(std::move(num), std::move(den)) {
    if (v_.get_den() == 0) throw error("rational with zero denominator");
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw error("inverse of zero");
    return Rational(mpq_class(1 / v_));
}

Rational Rational::parse(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw input_error("malformed rational '" + text + "'");
    if (q.get_den() == 0) throw input_error("rational with zero denominator '" + text + "'");
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::str() const {
    return v_.get_str();
}

long Rational::to_long() const {
    if (!is_integer()) throw error("rational " + str() + " is not an integer");
    mpz_class n = v_.get_num();
    if (!n.fits_slong_p()) throw error("integer " + str() + " out of machine range");
    return n.get_si();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

Rational rational_pow(const Rational& base, long e) {
    if (e < 0) return rational_pow(base.inverse(), -e);
    Rational acc(1), b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

}  // namespace mfhrr
