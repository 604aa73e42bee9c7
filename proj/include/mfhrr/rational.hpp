#ifndef MFHRR_RATIONAL_HPP
#define MFHRR_RATIONAL_HPP

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace mfhrr {

// Exact rational number. Thin value wrapper over GMP's mpq_class that keeps
// the stored value canonical (reduced, positive denominator) at all times.
// No floating point anywhere.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    Rational(long num, long den);
    explicit Rational(const mpz_class& n) : v_(n) {}
    explicit Rational(mpz_class num, mpz_class den);

    // Parses "a" or "a/b" with optional sign. Throws input_error.
    static Rational parse(const std::string& text);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const;
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    // "a" for integers, "a/b" otherwise.
    std::string str() const;

    // Integral value; throws error if not an integer or out of long range.
    long to_long() const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

  private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

Rational rational_pow(const Rational& base, long e);

}  // namespace mfhrr

#endif
