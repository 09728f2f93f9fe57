#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tracehull/bigreal.hpp"
#include "tracehull/rational.hpp"

namespace tracehull {

struct Monomial {
    int dx = 0;
    int dy = 0;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    int degree() const { return dx + dy; }
    std::string to_string() const;  // "x^2 y", "1", ...
};

// Exact bivariate polynomial, sparse canonical form: no zero coefficients,
// no duplicate monomials.
class Poly2 {
  public:
    Poly2() = default;

    static Poly2 constant(const Rational& c);
    static Poly2 monomial(int dx, int dy, const Rational& c);
    static Poly2 variable_x() { return monomial(1, 0, 1); }
    static Poly2 variable_y() { return monomial(0, 1, 1); }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    int total_degree() const;
    Rational coeff(const Monomial& m) const;
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    Poly2& add_term(const Monomial& m, const Rational& c);  // accumulating

    friend Poly2 operator+(const Poly2& a, const Poly2& b);
    friend Poly2 operator-(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    Poly2 operator-() const;
    Poly2 scale(const Rational& c) const;

    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

    Rational eval(const Rational& x, const Rational& y) const;
    BigReal eval(const BigReal& x, const BigReal& y) const;
    double eval(double x, double y) const;

    std::pair<Poly2, Poly2> gradient() const;  // (d/dx, d/dy)
    Poly2 deriv_x() const;
    Poly2 deriv_y() const;

    Poly2 swap_xy() const;
    Poly2 reflect(int sign_x, int sign_y) const;  // substitute (±x, ±y)
    // Substitute x -> a*t + b, y -> c*t + d; returns univariate coefficients in t
    // (index = power of t).
    std::vector<Rational> substitute_line(const Rational& a, const Rational& b,
                                          const Rational& c, const Rational& d) const;

    // True iff the product of `factors` expands to exactly `rhs`.
    static bool check_identity(std::span<const Poly2> factors, const Poly2& rhs);
    // Product of factors minus rhs (zero polynomial iff the identity holds).
    static Poly2 identity_defect(std::span<const Poly2> factors, const Poly2& rhs);

    std::string to_string() const;

  private:
    void prune(const Monomial& m);
    std::map<Monomial, Rational> terms_;
};

// Parsed helper: builds polynomials like "4 - 2*x - 2*y + x*y" from a term
// list of (dx, dy, coefficient-string). Coefficients parsed exactly.
Poly2 poly_from_terms(const std::vector<std::tuple<int, int, std::string>>& terms);

}  // namespace tracehull
