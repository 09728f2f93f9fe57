#pragma once

#include <mpfr.h>

#include <string>

#include "tracehull/rational.hpp"

namespace tracehull {

// Configurable-precision real. Precision is carried per value as a count of
// significant decimal digits (floor 30, default 60). Every operation rounds
// to nearest with ties to even (MPFR_RNDN) at the precision of its result,
// which is the wider of the operand precisions.
class BigReal {
  public:
    static constexpr int kMinDigits = 30;
    static constexpr int kDefaultDigits = 60;

    explicit BigReal(int digits = kDefaultDigits);
    BigReal(const BigReal& o);
    BigReal(BigReal&& o) noexcept;
    BigReal& operator=(const BigReal& o);
    BigReal& operator=(BigReal&& o) noexcept;
    ~BigReal();

    static BigReal from_rational(const Rational& q, int digits = kDefaultDigits);
    static BigReal from_long(long v, int digits = kDefaultDigits);
    static BigReal from_double(double v, int digits = kDefaultDigits);
    static BigReal from_string(const std::string& s, int digits = kDefaultDigits);

    int precision_digits() const { return digits_; }
    BigReal with_digits(int digits) const;  // re-round to a new precision

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Exact dyadic value as a rational (no rounding).
    Rational to_rational_exact() const;
    // Value rounded to `frac_digits` digits after the decimal point, as an
    // exact rational with a power-of-ten denominator.
    Rational to_rational_decimal(int frac_digits) const;
    std::string to_string(int sig_digits = 0) const;  // 0 = full precision

    BigReal operator-() const;
    BigReal abs() const;
    // in-place fused update v -= a*b (tableau kernel; avoids temporaries)
    void submul_inplace(const BigReal& a, const BigReal& b);
    void div_inplace(const BigReal& d);
    BigReal sqrt() const;
    BigReal pow_int(long e) const;

    friend BigReal operator+(const BigReal& a, const BigReal& b) { return binop(a, b, mpfr_add); }
    friend BigReal operator-(const BigReal& a, const BigReal& b) { return binop(a, b, mpfr_sub); }
    friend BigReal operator*(const BigReal& a, const BigReal& b) { return binop(a, b, mpfr_mul); }
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
    BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
    BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
    BigReal& operator/=(const BigReal& o) { return *this = *this / o; }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    int cmp(const BigReal& o) const { return mpfr_cmp(v_, o.v_); }
    // floor(log2(|v|)) + 1 for nonzero values (mpfr exponent convention)
    long exponent2() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }
    int cmp_rational(const Rational& q) const { return mpfr_cmp_q(v_, q.raw().get_mpq_t()); }

    // 10^-k at this value's precision (handy tolerance builder).
    static BigReal pow10(long k, int digits = kDefaultDigits);

    const mpfr_t& raw() const { return v_; }

  private:
    using BinFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static BigReal binop(const BigReal& a, const BigReal& b, BinFn fn);
    static mpfr_prec_t bits_for(int digits);

    mpfr_t v_;
    int digits_;
};

}  // namespace tracehull
