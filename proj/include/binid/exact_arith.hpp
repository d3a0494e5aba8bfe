#pragma once

// Exact integer/rational arithmetic and the combinatorial primitives used by
// every exact evaluator. Big integers come from GMP; the wrappers here add the
// canonical-form contract, string I/O and error reporting.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "binid/error.hpp"

namespace binid {

using BigInt = mpz_class;

/// Arbitrary-precision non-negative integer.
class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v);  // NOLINT(google-explicit-constructor)
  explicit Natural(BigInt v);

  const BigInt& value() const noexcept { return value_; }
  std::string to_string() const { return value_.get_str(); }

  /// Narrowing conversion; throws Overflow when the value does not fit.
  std::uint64_t to_u64() const;

  friend Natural operator+(const Natural& a, const Natural& b) { return Natural(BigInt(a.value_ + b.value_)); }
  friend Natural operator*(const Natural& a, const Natural& b) { return Natural(BigInt(a.value_ * b.value_)); }

  friend bool operator==(const Natural& a, const Natural& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  BigInt value_{0};
};

/// Exact rational number, always held in canonical form: denominator > 0 and
/// gcd(|numerator|, denominator) = 1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const Natural& v) : q_(v.value()) {}
  explicit Rational(const BigInt& v) : q_(v) {}
  /// Throws DivisionByZero for a zero denominator.
  Rational(const BigInt& numerator, const BigInt& denominator);

  /// Accepts "p/q", "-p/q" and plain integers. Decimals and exponents are
  /// rejected since they are not exact.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  /// Always "p/q", including "p/1" for integers.
  std::string to_fraction_string() const;
  double to_double() const;

  int sign() const noexcept { return sgn(q_); }
  bool is_zero() const noexcept { return sign() == 0; }
  Rational reciprocal() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}

  mpq_class q_{0};
};

/// Integer power with a machine-word exponent.
Rational pow(const Rational& base, unsigned exponent);

/// C(n, k) by the multiplicative formula; 0 when k > n.
Natural binomial(const Natural& n, const Natural& k);

/// The whole row C(n, 0..n).
std::vector<BigInt> binomial_row(std::uint64_t n);

Natural factorial(const Natural& n);

/// Product (s+1)(s+2)...(s+n); 1 for n = 0. Throws ZeroFactor if some s+k = 0.
Rational rising_product(const Rational& s, const Natural& n);

}  // namespace binid
