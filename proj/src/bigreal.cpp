#include "tracehull/bigreal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "tracehull/errors.hpp"

namespace tracehull {

mpfr_prec_t BigReal::bits_for(int digits) {
    // log2(10) = 3.3219...; a few guard bits on top.
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873626)) + 8;
}

BigReal::BigReal(int digits) : digits_(digits) {
    if (digits < kMinDigits) throw input_error("precision below " + std::to_string(kMinDigits) + " digits");
    mpfr_init2(v_, bits_for(digits));
    mpfr_set_zero(v_, 1);
}

BigReal::BigReal(const BigReal& o) : digits_(o.digits_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& o) noexcept : digits_(o.digits_) {
    v_[0] = o.v_[0];
    mpfr_init2(o.v_, MPFR_PREC_MIN);  // leave the source destructible
}

BigReal& BigReal::operator=(const BigReal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
        digits_ = o.digits_;
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& o) noexcept {
    if (this != &o) {
        mpfr_swap(v_, o.v_);
        std::swap(digits_, o.digits_);
    }
    return *this;
}

BigReal::~BigReal() {
    mpfr_clear(v_);
}

BigReal BigReal::from_rational(const Rational& q, int digits) {
    BigReal r(digits);
    mpfr_set_q(r.v_, q.raw().get_mpq_t(), MPFR_RNDN);
    return r;
}

BigReal BigReal::from_long(long v, int digits) {
    BigReal r(digits);
    mpfr_set_si(r.v_, v, MPFR_RNDN);
    return r;
}

BigReal BigReal::from_double(double v, int digits) {
    BigReal r(digits);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

BigReal BigReal::from_string(const std::string& s, int digits) {
    BigReal r(digits);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw input_error("malformed real literal: \"" + s + "\"");
    return r;
}

BigReal BigReal::with_digits(int digits) const {
    BigReal r(digits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

Rational BigReal::to_rational_exact() const {
    if (!is_finite()) throw input_error("cannot convert non-finite value to rational");
    if (is_zero()) return Rational(0);
    mpz_class z;
    mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), v_);
    mpq_class q(z);
    if (e >= 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
        q *= p;
    } else {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
        q /= p;
    }
    q.canonicalize();
    return Rational(std::move(q));
}

Rational BigReal::to_rational_decimal(int frac_digits) const {
    if (!is_finite()) throw input_error("cannot convert non-finite value to rational");
    mpfr_t scaled;
    mpfr_init2(scaled, mpfr_get_prec(v_) + 64);
    mpfr_set(scaled, v_, MPFR_RNDN);
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(frac_digits));
    mpfr_mul_z(scaled, scaled, p.get_mpz_t(), MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), scaled, MPFR_RNDN);
    mpfr_clear(scaled);
    mpq_class q(z, p);
    q.canonicalize();
    return Rational(std::move(q));
}

std::string BigReal::to_string(int sig_digits) const {
    if (sig_digits <= 0) sig_digits = digits_;
    std::vector<char> buf(static_cast<size_t>(sig_digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*R*g", sig_digits, MPFR_RNDN, v_);
    return std::string(buf.data());
}

void BigReal::submul_inplace(const BigReal& a, const BigReal& b) {
    if (mpfr_zero_p(a.v_) || mpfr_zero_p(b.v_)) return;
    static thread_local mpfr_t scratch;
    static thread_local bool scratch_ready = false;
    if (!scratch_ready) {
        mpfr_init2(scratch, mpfr_get_prec(v_));
        scratch_ready = true;
    }
    mpfr_prec_t need = std::max({mpfr_get_prec(v_), mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)});
    if (mpfr_get_prec(scratch) < need) mpfr_set_prec(scratch, need);
    mpfr_mul(scratch, a.v_, b.v_, MPFR_RNDN);
    mpfr_sub(v_, v_, scratch, MPFR_RNDN);
}

void BigReal::div_inplace(const BigReal& d) {
    if (d.is_zero()) throw input_error("division by zero");
    mpfr_div(v_, v_, d.v_, MPFR_RNDN);
}

BigReal BigReal::operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigReal BigReal::abs() const {
    BigReal r(*this);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigReal BigReal::sqrt() const {
    if (sgn() < 0) throw input_error("sqrt of negative value");
    BigReal r(*this);
    mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigReal BigReal::pow_int(long e) const {
    BigReal r(*this);
    mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
    if (b.is_zero()) throw input_error("division by zero");
    return BigReal::binop(a, b, mpfr_div);
}

BigReal BigReal::binop(const BigReal& a, const BigReal& b, BinFn fn) {
    BigReal r(std::max(a.digits_, b.digits_));
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal BigReal::pow10(long k, int digits) {
    BigReal r(digits);
    mpfr_set_si(r.v_, 10, MPFR_RNDN);
    mpfr_pow_si(r.v_, r.v_, k, MPFR_RNDN);
    return r;
}

}  // namespace tracehull
