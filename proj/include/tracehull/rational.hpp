#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace tracehull {

// Exact arbitrary-size rational. Always canonical: denominator > 0 and
// gcd(|num|, den) == 1. Arithmetic never rounds.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    Rational(long n, long d);
    explicit Rational(const mpz_class& n) : v_(n) {}
    explicit Rational(mpq_class v);

    // Exact value of a plain decimal string: optional sign, digits,
    // optional '.' followed by at least one digit. No exponents.
    // Throws input_error on anything else.
    static Rational parse_decimal(std::string_view s);

    // parse_decimal plus "p/q" fraction strings (used by file formats).
    static Rational parse(std::string_view s);

    const mpq_class& raw() const { return v_; }
    const mpz_class numerator() const { return v_.get_num(); }
    const mpz_class denominator() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational abs() const;
    double to_double() const { return v_.get_d(); }

    // "n" when integral, otherwise "n/d".
    std::string to_fraction_string() const;

    // True iff the denominator is of the form 2^a 5^b, i.e. the value has a
    // finite decimal expansion.
    bool has_terminating_decimal() const;
    // Exact decimal expansion; throws input_error if non-terminating.
    std::string to_exact_decimal_string() const;
    // Decimal rounded to `digits` significant digits (round half to even).
    std::string to_decimal_string(int digits) const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ + b.v_)); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ - b.v_)); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.v_ * b.v_)); }
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    // 10^k as a rational (k may be negative).
    static Rational pow10(long k);
    Rational pow(unsigned e) const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& q);

  private:
    mpq_class v_;  // invariant: canonical
};

}  // namespace tracehull
