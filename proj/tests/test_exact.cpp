#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tracehull/bigreal.hpp"
#include "tracehull/errors.hpp"
#include "tracehull/rational.hpp"

using namespace tracehull;

TEST_CASE("parse_decimal basics") {
    CHECK(Rational::parse_decimal("2") == Rational(2));
    CHECK(Rational::parse_decimal("-12.543") == Rational(-12543, 1000));
    CHECK(Rational::parse_decimal("+0.5") == Rational(1, 2));
    CHECK(Rational::parse_decimal("0.40233388785758") ==
          Rational(mpz_class("40233388785758")) / Rational::pow10(14));
    CHECK(Rational::parse_decimal("000.250") == Rational(1, 4));
}

TEST_CASE("parse_decimal rejects malformed strings") {
    for (const char* bad : {"", "-", ".5", "2.", "1e3", "1.2.3", "12a", " 2", "2 "}) {
        CHECK_THROWS_AS(Rational::parse_decimal(bad), input_error);
    }
}

TEST_CASE("parse accepts fractions") {
    CHECK(Rational::parse("-2/3") == Rational(-2, 3));
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), input_error);
}

TEST_CASE("canonical form") {
    Rational q(6, -4);
    CHECK(q == Rational(-3, 2));
    CHECK(q.denominator() == 2);
    CHECK(q.numerator() == -3);
    CHECK(Rational(0, 7).is_zero());
}

TEST_CASE("exactness properties on random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 60);
    for (int i = 0; i < 500; ++i) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
}

TEST_CASE("parse_decimal inverts exact decimal printing") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-100000, 100000);
    std::uniform_int_distribution<int> e2(0, 5), e5(0, 4);
    for (int i = 0; i < 300; ++i) {
        long d = 1;
        for (int k = 0; k < e2(rng); ++k) d *= 2;
        for (int k = 0; k < e5(rng); ++k) d *= 5;
        Rational q(num(rng), d);
        CHECK(q.has_terminating_decimal());
        CHECK(Rational::parse_decimal(q.to_exact_decimal_string()) == q);
    }
    CHECK_FALSE(Rational(1, 3).has_terminating_decimal());
    CHECK_THROWS_AS(Rational(1, 3).to_exact_decimal_string(), input_error);
}

TEST_CASE("decimal string rounding") {
    CHECK(Rational(-51, 25).to_exact_decimal_string() == "-2.04");
    CHECK(Rational(1, 3).to_decimal_string(5) == "0.33333");
    CHECK(Rational(2, 3).to_decimal_string(4) == "0.6667");
    CHECK(Rational(1, 2).to_decimal_string(1) == "0.5");
    // half-to-even at the cut digit
    CHECK(Rational(25, 1000).to_decimal_string(1) == "0.02");
    CHECK(Rational(35, 1000).to_decimal_string(1) == "0.04");
}

TEST_CASE("to_bigreal basics and precision floor") {
    BigReal third = BigReal::from_rational(Rational(1, 3), 30);
    CHECK(third.to_string(30).substr(0, 10) == "0.33333333");
    BigReal two = BigReal::from_rational(Rational(2), 60);
    CHECK(two.to_double() == 2.0);
    BigReal exact = BigReal::from_rational(Rational(-51, 25), 40);
    CHECK(exact.to_double() == -2.04);
    CHECK_THROWS_AS(BigReal::from_rational(Rational(1), 20), input_error);
}

TEST_CASE("to_bigreal agreement across precisions") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(-997, 997), den(1, 991);
    for (int i = 0; i < 100; ++i) {
        Rational q(num(rng), den(rng));
        BigReal a = BigReal::from_rational(q, 30);
        BigReal b = BigReal::from_rational(q, 75);
        BigReal diff = (a - b).abs();
        // agree to P-2 digits relative to magnitude
        BigReal scale = b.abs() + BigReal::pow10(-5, 75);
        CHECK(diff <= scale * BigReal::pow10(-28, 75));
    }
}

TEST_CASE("bigreal arithmetic carries the wider precision") {
    BigReal a = BigReal::from_rational(Rational(1, 7), 30);
    BigReal b = BigReal::from_rational(Rational(1, 11), 80);
    CHECK((a + b).precision_digits() == 80);
    CHECK((a * b).precision_digits() == 80);
    CHECK_THROWS_AS(a / BigReal::from_long(0, 30), input_error);
}

TEST_CASE("bigreal round trips and decimal rounding") {
    BigReal x = BigReal::from_string("1.25", 40);
    CHECK(x.to_rational_exact() == Rational(5, 4));
    BigReal pi_ish = BigReal::from_string("3.14159265358979", 40);
    CHECK(pi_ish.to_rational_decimal(4) == Rational(31416, 10000));
    CHECK((-x).to_rational_exact() == Rational(-5, 4));
    CHECK(x.sqrt().to_rational_decimal(6) == Rational::parse_decimal("1.118034"));
}
