#include "tracehull/rational.hpp"

#include <cctype>
#include <ostream>

#include "tracehull/errors.hpp"

namespace tracehull {

Rational::Rational(long n, long d) : v_(n, d) {
    if (d == 0) throw input_error("rational with zero denominator");
    v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) {
    if (v_.get_den() == 0) throw input_error("rational with zero denominator");
    v_.canonicalize();
}

Rational Rational::parse_decimal(std::string_view s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    size_t int_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == int_begin) throw input_error("malformed decimal: \"" + std::string(s) + "\"");
    std::string digits(s.substr(int_begin, i - int_begin));
    long frac_len = 0;
    if (i < s.size() && s[i] == '.') {
        ++i;
        size_t frac_begin = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == frac_begin) throw input_error("malformed decimal: \"" + std::string(s) + "\"");
        digits.append(s.substr(frac_begin, i - frac_begin));
        frac_len = static_cast<long>(i - frac_begin);
    }
    if (i != s.size()) throw input_error("malformed decimal: \"" + std::string(s) + "\"");

    mpz_class num(digits, 10);
    if (neg) num = -num;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac_len));
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::parse(std::string_view s) {
    size_t slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s);
    Rational num = parse_decimal(s.substr(0, slash));
    Rational den = parse_decimal(s.substr(slash + 1));
    if (den.is_zero()) throw input_error("fraction with zero denominator: \"" + std::string(s) + "\"");
    return num / den;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw input_error("rational division by zero");
    return Rational(mpq_class(a.v_ / b.v_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw input_error("rational division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::abs() const {
    return sign() < 0 ? -*this : *this;
}

std::string Rational::to_fraction_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

bool Rational::has_terminating_decimal() const {
    mpz_class d = v_.get_den();
    while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 2);
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
    return d == 1;
}

std::string Rational::to_exact_decimal_string() const {
    mpz_class d = v_.get_den();
    unsigned long twos = 0, fives = 0;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 2);
        ++twos;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
        ++fives;
    }
    if (d != 1) throw input_error("rational " + to_fraction_string() + " has no finite decimal expansion");
    unsigned long k = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, k);
    mpz_class scaled = v_.get_num() * scale / v_.get_den();  // exact by construction
    bool neg = scaled < 0;
    std::string s = mpz_class(::abs(scaled)).get_str();
    if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
    if (k > 0) s.insert(s.size() - k, ".");
    return (neg ? "-" : "") + s;
}

std::string Rational::to_decimal_string(int digits) const {
    if (digits < 1) throw input_error("to_decimal_string needs at least one digit");
    if (is_zero()) return "0";
    if (has_terminating_decimal()) {
        std::string exact = to_exact_decimal_string();
        // Count significant digits; if already short, the exact form is best.
        int sig = 0;
        bool lead = true;
        for (char c : exact) {
            if (c == '-' || c == '.') continue;
            if (lead && c == '0') continue;
            lead = false;
            ++sig;
        }
        if (sig <= digits) return exact;
    }
    // Scaled long division with round-half-even at the last kept digit.
    mpz_class n = ::abs(v_.get_num());
    mpz_class d = v_.get_den();
    // exponent e: value = 0.d1 d2 ... * 10^e with d1 != 0
    long e = 0;
    mpz_class lo = n, hi = d;
    while (lo >= hi) {
        hi *= 10;
        ++e;
    }
    while (lo * 10 < hi) {
        lo *= 10;
        --e;
    }
    (void)lo;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    // round(n/d * 10^(digits - e)) with half-to-even
    mpz_class num = n * scale;
    mpz_class den = d;
    if (e > 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
        den *= p;
    } else if (e < 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-e));
        num *= p;
    }
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class twice = 2 * r;
    if (twice > den || (twice == den && mpz_odd_p(q.get_mpz_t()))) q += 1;
    std::string ds = q.get_str();
    if (static_cast<long>(ds.size()) > digits) {
        // rounding overflowed to an extra digit (e.g. 0.999.. -> 1.00..)
        ds.pop_back();
        ++e;
    }
    std::string out = sign() < 0 ? "-" : "";
    if (e <= 0) {
        out += "0.";
        out.append(static_cast<size_t>(-e), '0');
        out += ds;
    } else if (e >= static_cast<long>(ds.size())) {
        out += ds;
        out.append(static_cast<size_t>(e - static_cast<long>(ds.size())), '0');
    } else {
        out += ds.substr(0, static_cast<size_t>(e)) + "." + ds.substr(static_cast<size_t>(e));
    }
    // Trim trailing zeros in the fractional part.
    if (out.find('.') != std::string::npos) {
        size_t last = out.find_last_not_of('0');
        if (out[last] == '.') --last;
        out.erase(last + 1);
    }
    return out;
}

Rational Rational::pow10(long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    if (k >= 0) return Rational(mpq_class(p));
    mpq_class q(1, p);
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::pow(unsigned e) const {
    Rational out(1);
    Rational base = *this;
    while (e > 0) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
    return os << q.to_fraction_string();
}

}  // namespace tracehull
