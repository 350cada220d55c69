#include "doctest.h"

#include <climits>
#include <random>

#include "specconv/bigint.hpp"

using specconv::BigInt;
using specconv::Rational;

TEST_CASE("small arithmetic stays inline") {
  BigInt a(40), b(2);
  CHECK((a + b) == BigInt(42));
  CHECK((a - b).is_small());
  CHECK((a * b).small_value() == 80);
  CHECK(-a == BigInt(-40));
}

TEST_CASE("overflow promotes and results normalize back") {
  const BigInt m(INT64_MAX);
  const BigInt big = m + BigInt(1);
  CHECK_FALSE(big.is_small());
  CHECK(big.to_string() == "9223372036854775808");
  const BigInt back = big - BigInt(1);
  CHECK(back.is_small());
  CHECK(back == m);
  const BigInt p = m * m;
  CHECK(p.to_string() == "85070591730234615847396907784232501249");
  CHECK(BigInt(INT64_MIN) * BigInt(-1) == big);
  CHECK(-BigInt(INT64_MIN) == big);
}

TEST_CASE("parse, ordering and bit length") {
  const BigInt x = BigInt::parse("-123456789012345678901234567890");
  CHECK(x.sign() < 0);
  CHECK(x.to_string() == "-123456789012345678901234567890");
  CHECK(x < BigInt(0));
  CHECK(BigInt::parse("+17") == BigInt(17));
  CHECK_THROWS(BigInt::parse("12a"));
  CHECK_THROWS(BigInt::parse(""));
  CHECK(BigInt(0).bit_length() == 0);
  CHECK(BigInt(255).bit_length() == 8);
  CHECK(BigInt(-256).bit_length() == 9);
}

TEST_CASE("floor division and modulus follow the divisor's sign") {
  CHECK(floor_div(BigInt(7), BigInt(2)) == BigInt(3));
  CHECK(floor_div(BigInt(-7), BigInt(2)) == BigInt(-4));
  CHECK(floor_div(BigInt(7), BigInt(-2)) == BigInt(-4));
  CHECK(floor_mod(BigInt(-7), BigInt(2)) == BigInt(1));
  CHECK(floor_mod(BigInt(7), BigInt(-2)) == BigInt(-1));
  CHECK(divexact(BigInt(91), BigInt(7)) == BigInt(13));
  CHECK(gcd(BigInt(-12), BigInt(18)) == BigInt(6));
  CHECK(gcd(BigInt(0), BigInt(0)) == BigInt(0));
}

TEST_CASE("factorial and powers") {
  CHECK(specconv::factorial(0) == BigInt(1));
  CHECK(specconv::factorial(20).to_string() == "2432902008176640000");
  CHECK(specconv::factorial(25).to_string() == "15511210043330985984000000");
  CHECK(pow(BigInt(8), 3) == BigInt(512));
  CHECK(pow(BigInt(2), 100).to_string() == "1267650600228229401496703205376");
}

TEST_CASE("random small operations agree with __int128") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(INT64_MIN / 2, INT64_MAX / 2);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t a = dist(rng), b = dist(rng);
    const __int128 p = static_cast<__int128>(a) * b;
    CHECK(BigInt(a) * BigInt(b) == BigInt::from_i128(p));
    CHECK(BigInt(a) + BigInt(b) == BigInt::from_i128(static_cast<__int128>(a) + b));
    CHECK(((BigInt(a) <=> BigInt(b)) == (a <=> b)));
  }
}

TEST_CASE("rationals are kept in lowest terms") {
  const Rational r(BigInt(6), BigInt(-8));
  CHECK(r.num() == BigInt(-3));
  CHECK(r.den() == BigInt(4));
  CHECK(Rational::parse("10/4") == Rational(BigInt(5), BigInt(2)));
  CHECK(Rational::parse("-0.125") == Rational(BigInt(-1), BigInt(8)));
  CHECK(Rational::parse("3") == Rational(3));
  CHECK_THROWS(Rational(BigInt(1), BigInt(0)));
  CHECK_THROWS(Rational::parse("1/0"));
}

TEST_CASE("rational arithmetic, floor and fractional part") {
  const Rational a = Rational::parse("1/3");
  const Rational b = Rational::parse("1/6");
  CHECK(a + b == Rational::parse("1/2"));
  CHECK(a - b == b);
  CHECK(a * b == Rational::parse("1/18"));
  CHECK(a / b == Rational(2));
  CHECK(Rational::parse("-7/2").floor() == BigInt(-4));
  CHECK(Rational::parse("-7/2").frac() == Rational::parse("1/2"));
  CHECK(Rational::parse("7/2").frac() == Rational::parse("1/2"));
  CHECK(Rational(5).frac().is_zero());
  CHECK(Rational::parse("1/3") < Rational::parse("1/2"));
  CHECK(Rational::parse("-1/2") < Rational::parse("-1/3"));
}

TEST_CASE("large rationals after overflowing the fast path") {
  Rational s;
  // sum_{n=1}^{60} 1/n has a denominator far beyond 64 bits
  for (int n = 1; n <= 60; ++n) s += Rational(BigInt(1), BigInt(n));
  CHECK_FALSE(s.den().is_small());
  CHECK(s.to_double() == doctest::Approx(4.679870412951738).epsilon(1e-12));
  Rational t = s;
  for (int n = 1; n <= 60; ++n) t -= Rational(BigInt(1), BigInt(n));
  CHECK(t.is_zero());
}

TEST_CASE("double conversions are exact in both directions") {
  CHECK(Rational::from_double(0.1) != Rational::parse("1/10"));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
  CHECK(Rational::from_double(-2.5) == Rational::parse("-5/2"));
  CHECK(Rational::parse("1/3").to_double() == 1.0 / 3.0);
}
