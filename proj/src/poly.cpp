#include "tracehull/poly.hpp"

#include <algorithm>
#include <sstream>

#include "tracehull/errors.hpp"

namespace tracehull {

std::string Monomial::to_string() const {
    if (dx == 0 && dy == 0) return "1";
    std::string s;
    if (dx > 0) {
        s += "x";
        if (dx > 1) s += "^" + std::to_string(dx);
    }
    if (dy > 0) {
        if (!s.empty()) s += "*";
        s += "y";
        if (dy > 1) s += "^" + std::to_string(dy);
    }
    return s;
}

Poly2 Poly2::constant(const Rational& c) {
    Poly2 p;
    p.add_term({0, 0}, c);
    return p;
}

Poly2 Poly2::monomial(int dx, int dy, const Rational& c) {
    if (dx < 0 || dy < 0) throw input_error("negative monomial exponent");
    Poly2 p;
    p.add_term({dx, dy}, c);
    return p;
}

int Poly2::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

Rational Poly2::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly2::prune(const Monomial& m) {
    auto it = terms_.find(m);
    if (it != terms_.end() && it->second.is_zero()) terms_.erase(it);
}

Poly2& Poly2::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return *this;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        prune(m);
    }
    return *this;
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

Poly2 operator-(const Poly2& a, const Poly2& b) {
    Poly2 out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out.add_term({ma.dx + mb.dx, ma.dy + mb.dy}, ca * cb);
    return out;
}

Poly2 Poly2::operator-() const {
    return scale(Rational(-1));
}

Poly2 Poly2::scale(const Rational& c) const {
    Poly2 out;
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

namespace {

// Horner over grouped dx rows: p = sum_i x^i * (sum_j c_ij y^j).
template <typename S>
S eval_horner(const std::map<Monomial, Rational>& terms, const S& x, const S& y, const S& zero,
              S (*lift)(const Rational&, const S&)) {
    int max_dx = -1;
    for (const auto& [m, c] : terms) max_dx = std::max(max_dx, m.dx);
    if (max_dx < 0) return zero;
    // rows[i] = inner polynomial in y for x-degree i, as (dy, coeff) ascending in dy.
    std::vector<std::vector<std::pair<int, const Rational*>>> rows(static_cast<size_t>(max_dx) + 1);
    for (const auto& [m, c] : terms) rows[static_cast<size_t>(m.dx)].push_back({m.dy, &c});
    S acc = zero;
    for (int i = max_dx; i >= 0; --i) {
        const auto& row = rows[static_cast<size_t>(i)];
        S inner = zero;
        int pending = 0;  // powers of y still to apply
        for (auto it = row.rbegin(); it != row.rend(); ++it) {  // descending dy
            for (int k = 0; k < pending - it->first; ++k) inner = inner * y;
            inner = inner + lift(*it->second, zero);
            pending = it->first;
        }
        for (int k = 0; k < pending; ++k) inner = inner * y;
        acc = acc * x + inner;
    }
    return acc;
}

}  // namespace

Rational Poly2::eval(const Rational& x, const Rational& y) const {
    auto lift = [](const Rational& c, const Rational&) { return c; };
    return eval_horner<Rational>(terms_, x, y, Rational(0), lift);
}

BigReal Poly2::eval(const BigReal& x, const BigReal& y) const {
    int digits = std::max(x.precision_digits(), y.precision_digits());
    BigReal zero(digits);
    auto lift = [](const Rational& c, const BigReal& z) {
        return BigReal::from_rational(c, z.precision_digits());
    };
    return eval_horner<BigReal>(terms_, x, y, zero, lift);
}

double Poly2::eval(double x, double y) const {
    auto lift = [](const Rational& c, const double&) { return c.to_double(); };
    return eval_horner<double>(terms_, x, y, 0.0, lift);
}

Poly2 Poly2::deriv_x() const {
    Poly2 out;
    for (const auto& [m, c] : terms_)
        if (m.dx > 0) out.add_term({m.dx - 1, m.dy}, c * Rational(m.dx));
    return out;
}

Poly2 Poly2::deriv_y() const {
    Poly2 out;
    for (const auto& [m, c] : terms_)
        if (m.dy > 0) out.add_term({m.dx, m.dy - 1}, c * Rational(m.dy));
    return out;
}

std::pair<Poly2, Poly2> Poly2::gradient() const {
    return {deriv_x(), deriv_y()};
}

Poly2 Poly2::swap_xy() const {
    Poly2 out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(Monomial{m.dy, m.dx}, c);
    return out;
}

Poly2 Poly2::reflect(int sign_x, int sign_y) const {
    if ((sign_x != 1 && sign_x != -1) || (sign_y != 1 && sign_y != -1))
        throw input_error("reflect signs must be +1 or -1");
    Poly2 out;
    for (const auto& [m, c] : terms_) {
        bool flip = (sign_x < 0 && (m.dx & 1)) != (sign_y < 0 && (m.dy & 1));
        out.terms_.emplace(m, flip ? -c : c);
    }
    return out;
}

std::vector<Rational> Poly2::substitute_line(const Rational& a, const Rational& b,
                                             const Rational& c, const Rational& d) const {
    // Univariate polynomials as coefficient vectors in t.
    auto mul1 = [](const std::vector<Rational>& p, const std::vector<Rational>& q) {
        std::vector<Rational> out(p.size() + q.size() - 1, Rational(0));
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
        return out;
    };
    int deg = total_degree();
    std::vector<std::vector<Rational>> xp, yp;  // powers of (a t + b), (c t + d)
    xp.push_back({Rational(1)});
    yp.push_back({Rational(1)});
    std::vector<Rational> lx = {b, a}, ly = {d, c};
    for (int i = 1; i <= deg; ++i) {
        xp.push_back(mul1(xp.back(), lx));
        yp.push_back(mul1(yp.back(), ly));
    }
    std::vector<Rational> out(static_cast<size_t>(deg) + 1, Rational(0));
    for (const auto& [m, coef] : terms_) {
        auto term = mul1(xp[static_cast<size_t>(m.dx)], yp[static_cast<size_t>(m.dy)]);
        for (size_t k = 0; k < term.size(); ++k) out[k] += coef * term[k];
    }
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    return out;
}

Poly2 Poly2::identity_defect(std::span<const Poly2> factors, const Poly2& rhs) {
    Poly2 prod = Poly2::constant(Rational(1));
    for (const auto& f : factors) prod = prod * f;
    return prod - rhs;
}

bool Poly2::check_identity(std::span<const Poly2> factors, const Poly2& rhs) {
    return identity_defect(factors, rhs).is_zero();
}

std::string Poly2::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << (c.sign() >= 0 ? " + " : " - ");
        else if (c.sign() < 0) os << "-";
        first = false;
        Rational a = c.abs();
        if (m.dx == 0 && m.dy == 0) os << a.to_fraction_string();
        else if (a == Rational(1)) os << m.to_string();
        else os << a.to_fraction_string() << "*" << m.to_string();
    }
    return os.str();
}

Poly2 poly_from_terms(const std::vector<std::tuple<int, int, std::string>>& terms) {
    Poly2 p;
    for (const auto& [dx, dy, c] : terms) p.add_term({dx, dy}, Rational::parse(c));
    return p;
}

}  // namespace tracehull
