#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mabmech/rational.hpp"

using mabmech::Rational;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, -7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);

  // 70/3, the worked naive payment value
  CHECK(Rational(10, 3) * Rational(7) == Rational(70, 3));
}

TEST_CASE("ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(7, 2) > Rational(3));
}

TEST_CASE("large intermediates reduce back into range") {
  Rational big(1'000'000'007LL, 998'244'353LL);
  Rational x = big * Rational(998'244'353LL) / Rational(1'000'000'007LL);
  CHECK(x == Rational(1));
}

TEST_CASE("overflow is detected, not wrapped") {
  Rational huge(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(huge * huge, std::overflow_error);
}

TEST_CASE("string round trip") {
  CHECK(Rational(70, 3).str() == "70/3");
  CHECK(Rational(5).str() == "5");
  CHECK(Rational::parse("70/3") == Rational(70, 3));
  CHECK(Rational::parse("-8") == Rational(-8));
}

TEST_CASE("exact conversion from dyadic doubles") {
  CHECK(Rational::from_double_exact(0.25) == Rational(1, 4));
  CHECK(Rational::from_double_exact(-2.5) == Rational(-5, 2));
  CHECK(Rational::from_double_exact(3.0) == Rational(3));
  CHECK(Rational(1, 4).to_double() == 0.25);
}
