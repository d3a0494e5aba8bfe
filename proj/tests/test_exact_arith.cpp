#include <doctest.h>

#include <random>
#include <sstream>

#include "binid/exact_arith.hpp"
#include "oracles.hpp"

using binid::BigInt;
using binid::Error;
using binid::ErrorCode;
using binid::Natural;
using binid::Rational;

namespace {

Rational R(const char* text) { return Rational::parse(text); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected binid::Error");
  return ErrorCode::ParseError;
}

Rational random_rational(std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<long> num(-1'000'000, 1'000'000);
  std::uniform_int_distribution<long> den(1, 1'000'000);
  while (true) {
    Rational r(BigInt(num(rng)), BigInt(den(rng)));
    if (!nonzero || !r.is_zero()) return r;
  }
}

}  // namespace

TEST_CASE("binomial small cases") {
  CHECK(binid::binomial(5, 2) == Natural(10));
  for (std::uint64_t n : {0u, 1u, 7u, 1000u}) CHECK(binid::binomial(n, 0) == Natural(1));
  CHECK(binid::binomial(3, 4) == Natural(0));
  CHECK(binid::binomial(30, 15).to_string() == "155117520");
}

TEST_CASE("binomial agrees with the Pascal triangle and satisfies Pascal's rule up to 64") {
  const auto rows = oracle::pascal(64);
  for (unsigned n = 0; n <= 64; ++n) {
    const auto row = binid::binomial_row(n);
    for (unsigned k = 0; k <= n; ++k) {
      const Natural c = binid::binomial(n, k);
      REQUIRE(c.to_string() == rows[n][k].str());
      REQUIRE(row[k] == c.value());
      if (k >= 1 && n >= 1) {
        REQUIRE(c == binid::binomial(n - 1, k - 1) + binid::binomial(n - 1, k));
      }
    }
  }
}

TEST_CASE("factorial") {
  CHECK(binid::factorial(0) == Natural(1));
  CHECK(binid::factorial(4) == Natural(24));
  CHECK(binid::factorial(20).to_string() == "2432902008176640000");
  for (unsigned n = 0; n <= 60; ++n) CHECK(binid::factorial(n).to_string() == oracle::factorial(n).str());
}

TEST_CASE("rising_product") {
  CHECK(binid::rising_product(1, 3) == Rational(24));
  CHECK(binid::rising_product(R("7/3"), 0) == Rational(1));
  CHECK(binid::rising_product(R("1/2"), 2) == R("15/4"));
  CHECK(code_of([] { binid::rising_product(-2, 3); }) == ErrorCode::ZeroFactor);
  // -5 + k never vanishes for k <= 4.
  CHECK(binid::rising_product(-5, 4) == Rational(-4 * -3 * -2 * -1));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational s = random_rational(rng).sign() < 0 ? R("3/5") : random_rational(rng);
    for (unsigned n = 0; n < 12; ++n) {
      CHECK(binid::rising_product(s, n + 1) == binid::rising_product(s, n) * (s + Rational(static_cast<long>(n) + 1)));
    }
  }
}

TEST_CASE("rational canonical form") {
  const Rational r(BigInt(6), BigInt(-4));
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(Rational(r.numerator(), r.denominator()) == r);
  CHECK(Rational(BigInt(0), BigInt(-7)).to_string() == "0");
  CHECK(Rational(BigInt(0), BigInt(-7)).denominator() == 1);
  CHECK(R("10/4") == R("5/2"));
  CHECK(code_of([] { Rational(BigInt(1), BigInt(0)); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("rational parsing and printing") {
  CHECK(R("-3/7").to_string() == "-3/7");
  CHECK(R("5") == Rational(5));
  CHECK(R("5").to_fraction_string() == "5/1");
  CHECK(R("+4/6").to_string() == "2/3");
  CHECK(R("123456789012345678901234567890/3").to_string() == "41152263004115226300411522630");

  for (const char* bad : {"", "1.5", "1e3", "/3", "3/", "a", "1/-2", "1 / 2", "--1"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { R(bad); }) == ErrorCode::ParseError);
  }
  CHECK(code_of([] { R("1/0"); }) == ErrorCode::DivisionByZero);

  std::ostringstream os;
  os << R("-1/2");
  CHECK(os.str() == "-1/2");
}

TEST_CASE("rational string round trip is lossless") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    Rational r = random_rational(rng);
    r *= binid::pow(random_rational(rng, true), 7);
    CHECK(Rational::parse(r.to_string()) == r);
    CHECK(Rational::parse(r.to_fraction_string()) == r);
  }
}

TEST_CASE("rational field laws on random operands") {
  std::mt19937_64 rng(20261017);
  for (int i = 0; i < 300; ++i) {
    const Rational a = random_rational(rng);
    const Rational b = random_rational(rng);
    const Rational c = random_rational(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == Rational(0));
    if (!a.is_zero()) {
      CHECK(a * a.reciprocal() == Rational(1));
      CHECK(b / a * a == b);
    }
  }
  CHECK(code_of([] { Rational(1) / Rational(0); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([] { Rational(0).reciprocal(); }) == ErrorCode::DivisionByZero);
}

TEST_CASE("rational ordering and conversion") {
  CHECK(R("1/3") < R("1/2"));
  CHECK(R("-1/2") < R("-1/3"));
  CHECK(R("1/3").to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
  CHECK(R("1/10").to_double() == 0.1);
  CHECK(binid::pow(R("-2/3"), 3) == R("-8/27"));
  CHECK(binid::pow(R("5/7"), 0) == Rational(1));
}

TEST_CASE("natural") {
  CHECK(code_of([] { Natural(BigInt(-1)); }) == ErrorCode::NegativeNatural);
  CHECK(Natural(std::uint64_t{18446744073709551615ull}).to_string() == "18446744073709551615");
  CHECK(Natural(std::uint64_t{18446744073709551615ull}).to_u64() == 18446744073709551615ull);
  CHECK(code_of([] { (Natural(std::uint64_t{1} << 63) * Natural(4)).to_u64(); }) == ErrorCode::Overflow);
}

TEST_CASE("to_double is correctly rounded") {
  // For |p|, q < 2^53 the IEEE quotient p/q is itself correctly rounded.
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> num(-(1L << 52), 1L << 52);
  std::uniform_int_distribution<long> den(1, 1L << 52);
  for (int i = 0; i < 20000; ++i) {
    const long p = num(rng);
    const long q = den(rng);
    CHECK(Rational(BigInt(p), BigInt(q)).to_double() == static_cast<double>(p) / static_cast<double>(q));
  }
  // Huge components still land on the nearest double.
  const Rational tiny = binid::pow(R("1/3"), 400);
  CHECK(tiny.to_double() == doctest::Approx(std::pow(1.0 / 3.0, 400)).epsilon(1e-13));
  CHECK((binid::pow(R("10/3"), 200) / binid::pow(R("10/3"), 199)).to_double() == 10.0 / 3.0);
}
