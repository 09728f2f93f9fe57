#include "tracehull/moments.hpp"

#include <algorithm>

namespace tracehull {

namespace {

std::vector<Poly2> build_a5_features() {
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    std::vector<Poly2> f;
    f.push_back(x + y);
    f.push_back(x * y);
    f.push_back(x * x + y * y);
    f.push_back(x * x * y + x * y * y);
    f.push_back(x * x * y * y);
    return f;
}

}  // namespace

const MomentBasis& MomentBasis::a5() {
    static const MomentBasis basis{BasisId::A5, build_a5_features()};
    return basis;
}

const MomentBasis& MomentBasis::b32() {
    static const MomentBasis basis = [] {
        MomentBasis b{BasisId::B32, {}};
        for (const Monomial& m : known_monomials_b()) b.features.push_back(Poly2::monomial(m.dx, m.dy, 1));
        return b;
    }();
    return basis;
}

const MomentBasis& MomentVector::basis_ref() const {
    return basis == BasisId::A5 ? MomentBasis::a5() : MomentBasis::b32();
}

Rational catalan(int n) {
    if (n < 0) throw input_error("catalan of negative index");
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    b /= (n + 1);
    return Rational(b);
}

Rational haar_moment_b(int k, int l) {
    if (k < 0 || l < 0) throw input_error("moment exponents must be nonnegative");
    if (k % 2 != 0 || l % 2 != 0) return Rational(0);
    return catalan(k / 2) * catalan(l / 2);
}

const std::vector<Monomial>& known_monomials_b() {
    static const std::vector<Monomial> monos = [] {
        // Availability rule: both exponents at most 4, or one exponent zero and
        // the other at most 8. Canonical order: total degree ascending, then
        // x-exponent descending. This is also the on-disk and LP column order.
        std::vector<Monomial> v;
        for (int deg = 1; deg <= 8; ++deg)
            for (int k = deg; k >= 0; --k) {
                int l = deg - k;
                bool known = (k <= 4 && l <= 4) || (k == 0 && l <= 8) || (l == 0 && k <= 8);
                if (known) v.push_back({k, l});
            }
        return v;
    }();
    return monos;
}

MomentVector target_b() {
    MomentVector m{BasisId::B32, {}};
    for (const Monomial& mono : known_monomials_b()) m.values.push_back(haar_moment_b(mono.dx, mono.dy));
    return m;
}

MomentVector target_a() {
    return constraints_from_poles(standard_pole_spec_a());
}

std::vector<PoleConstraint> standard_pole_spec_a() {
    Poly2 x = Poly2::variable_x(), y = Poly2::variable_y();
    Poly2 tr_v = x + y;                       // trace of the 4-dim representation
    Poly2 tr_w = x * y + Poly2::constant(1);  // trace of the 5-dim complement
    return {
        {tr_v, 0},
        {tr_w, 0},
        {tr_v * tr_v, 1},
        {tr_v * tr_w, 0},
        {tr_w * tr_w, 1},
    };
}

std::pair<Rational, std::vector<Rational>> decompose_over_basis(const Poly2& p, const MomentBasis& basis) {
    if (basis.id == BasisId::B32) {
        std::vector<Rational> coeffs(basis.size(), Rational(0));
        const auto& monos = known_monomials_b();
        Rational c0(0);
        for (const auto& [m, c] : p.terms()) {
            if (m.dx == 0 && m.dy == 0) {
                c0 = c;
                continue;
            }
            auto it = std::find(monos.begin(), monos.end(), m);
            if (it == monos.end()) throw unknown_moment_error(m);
            coeffs[static_cast<size_t>(it - monos.begin())] = c;
        }
        return {c0, coeffs};
    }
    // A5: match coefficients of the symmetric features.
    //   c1 (x+y) + c2 xy + c3 (x^2+y^2) + c4 (x^2 y + x y^2) + c5 x^2 y^2 + c0
    Rational c0 = p.coeff({0, 0});
    Rational c1 = p.coeff({1, 0});
    Rational c2 = p.coeff({1, 1});
    Rational c3 = p.coeff({2, 0});
    Rational c4 = p.coeff({2, 1});
    Rational c5 = p.coeff({2, 2});
    Poly2 recon = Poly2::constant(c0);
    const auto& f = MomentBasis::a5().features;
    std::vector<Rational> coeffs = {c1, c2, c3, c4, c5};
    for (size_t i = 0; i < coeffs.size(); ++i) recon = recon + f[i].scale(coeffs[i]);
    Poly2 defect = p - recon;
    if (!defect.is_zero()) throw unknown_moment_error(defect.terms().begin()->first);
    return {c0, coeffs};
}

MomentVector constraints_from_poles(const std::vector<PoleConstraint>& spec) {
    const MomentBasis& basis = MomentBasis::a5();
    const size_t d = basis.size();
    // Rows of [coeffs | pole - c0] over the unknown feature averages.
    std::vector<std::vector<Rational>> rows;
    for (const auto& con : spec) {
        auto [c0, coeffs] = decompose_over_basis(con.trace_poly, basis);
        coeffs.push_back(Rational(con.pole_order) - c0);
        rows.push_back(std::move(coeffs));
    }
    // Gaussian elimination, exact.
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < d && rank < rows.size(); ++col) {
        size_t sel = rank;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            Rational f = rows[r][col] / rows[rank][col];
            for (size_t k = col; k <= d; ++k) rows[r][k] -= f * rows[rank][k];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (size_t r = rank; r < rows.size(); ++r)
        if (!rows[r][d].is_zero()) throw input_error("inconsistent pole constraints");
    if (rank < d) throw input_error("underdetermined: pole constraints do not pin down all feature averages");
    MomentVector out{BasisId::A5, std::vector<Rational>(d, Rational(0))};
    for (size_t r = 0; r < rank; ++r) out.values[pivot_col[r]] = rows[r][d] / rows[r][pivot_col[r]];
    return out;
}

Rational expectation(const Poly2& p, const MomentVector& m) {
    auto [c0, coeffs] = decompose_over_basis(p, m.basis_ref());
    Rational out = c0;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) out += coeffs[i] * m.values[i];
    return out;
}

std::vector<Rational> featurize(const Rational& x, const Rational& y, const MomentBasis& basis) {
    std::vector<Rational> out;
    out.reserve(basis.size());
    for (const Poly2& f : basis.features) out.push_back(f.eval(x, y));
    return out;
}

std::vector<BigReal> featurize(const BigReal& x, const BigReal& y, const MomentBasis& basis) {
    std::vector<BigReal> out;
    out.reserve(basis.size());
    for (const Poly2& f : basis.features) out.push_back(f.eval(x, y));
    return out;
}

const std::vector<Poly2>& a5_features_sym() {
    static const std::vector<Poly2> f = [] {
        Poly2 e1 = Poly2::variable_x(), e2 = Poly2::variable_y();
        std::vector<Poly2> v;
        v.push_back(e1);
        v.push_back(e2);
        v.push_back(e1 * e1 - e2.scale(2));
        v.push_back(e1 * e2);
        v.push_back(e2 * e2);
        return v;
    }();
    return f;
}

std::vector<Rational> featurize_sym(const Rational& e1, const Rational& e2) {
    std::vector<Rational> out;
    out.reserve(a5_features_sym().size());
    for (const Poly2& f : a5_features_sym()) out.push_back(f.eval(e1, e2));
    return out;
}

std::pair<Rational, Rational> a1_a2(const Rational& x, const Rational& y) {
    return {x + y, x * y + Rational(2)};
}

double SemicircleSampler::next() {
    std::uniform_real_distribution<double> ux(-2.0, 2.0);
    std::uniform_real_distribution<double> uu(0.0, 1.0);
    for (;;) {
        double x = ux(rng_);
        if (uu(rng_) * 2.0 <= std::sqrt(4.0 - x * x)) return x;
    }
}

}  // namespace tracehull
