#include <doctest.h>

#include <numeric>
#include <random>

#include "nlslab/rational.hpp"

using nlslab::Rational;

TEST_SUITE("rational") {

TEST_CASE("lowest terms and positive denominator") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(3, 2).den() == 2);
  CHECK(Rational(6, -4).den() == 2);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(Rational(7, 4).reciprocal() == Rational(4, 7));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(0).reciprocal(), std::domain_error);
}

TEST_CASE("ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK(Rational(7, 4) > Rational(3, 2));
  CHECK(Rational(2, 4) <= Rational(1, 2));
}

TEST_CASE("integer powers") {
  CHECK(Rational(2).pow_int(10) == Rational(1024));
  CHECK(Rational(3, 2).pow_int(2) == Rational(9, 4));
  CHECK(Rational(8).pow_int(-4) == Rational(1, 4096));
  CHECK(Rational(5).pow_int(0) == Rational(1));
}

TEST_CASE("parse and serialize") {
  CHECK(Rational::parse("3/2") == Rational(3, 2));
  CHECK(Rational::parse("-7/4") == Rational(-7, 4));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("1.9") == Rational(19, 10));
  CHECK(Rational::parse("-0.25") == Rational(-1, 4));
  CHECK(Rational(3, 2).str() == "3/2");
  CHECK(Rational(4).str() == "4/1");
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.2/3"), std::invalid_argument);
}

TEST_CASE("from_double recovers simple rationals") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(1.9) == Rational(19, 10));
  CHECK(Rational::from_double(4.0) == Rational(4));
  CHECK(Rational::from_double(-2.25) == Rational(-9, 4));
}

TEST_CASE("random arithmetic stays normalized") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::int64_t> num(-200, 200);
  std::uniform_int_distribution<std::int64_t> den(1, 60);
  for (int i = 0; i < 2000; ++i) {
    const Rational a(num(rng), den(rng));
    const Rational b(num(rng), den(rng));
    const Rational s = a + b;
    CHECK(s.den() > 0);
    CHECK(std::gcd(s.num(), s.den()) <= 1);
    const Rational p = a * b;
    CHECK(std::gcd(p.num(), p.den()) <= 1);
    // field axioms spot checks
    CHECK(s - b == a);
    if (b != Rational(0)) CHECK(a * b / b == a);
  }
}

TEST_CASE("conjugate exponent") {
  CHECK(nlslab::conjugate_exponent(Rational(2)) == Rational(2));
  CHECK(nlslab::conjugate_exponent(Rational(7, 4)) == Rational(7, 3));
  CHECK(nlslab::conjugate_exponent(Rational(3, 2)) == Rational(3));
  CHECK_THROWS_AS(nlslab::conjugate_exponent(Rational(1)), std::domain_error);
}

TEST_CASE("LpExponent sentinel") {
  const nlslab::LpExponent inf = nlslab::LpExponent::inf();
  CHECK(inf.infinite());
  CHECK(inf.str() == "inf");
  CHECK_THROWS_AS(inf.finite(), std::logic_error);
  const nlslab::LpExponent two{Rational(2)};
  CHECK_FALSE(two.infinite());
  CHECK(two.finite() == Rational(2));
}

}  // TEST_SUITE
