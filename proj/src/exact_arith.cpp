#include "binid/exact_arith.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>

namespace binid {

namespace {

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  if (text.empty()) {
    return false;
  }
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (!is_integer_literal(text)) {
    throw Error(ErrorCode::ParseError, "not an exact rational: '" + std::string(whole) + "'");
  }
  if (text.front() == '+') {
    text.remove_prefix(1);
  }
  return BigInt(std::string(text), 10);
}

}  // namespace

Natural::Natural(std::uint64_t v) {
  // mpz_class has no portable uint64_t constructor on every platform.
  value_ = static_cast<unsigned long>(v >> 32);
  value_ <<= 32;
  value_ += static_cast<unsigned long>(v & 0xffffffffu);
}

Natural::Natural(BigInt v) : value_(std::move(v)) {
  if (sgn(value_) < 0) {
    throw Error(ErrorCode::NegativeNatural, value_.get_str());
  }
}

std::uint64_t Natural::to_u64() const {
  if (mpz_sizeinbase(value_.get_mpz_t(), 2) > 64) {
    throw Error(ErrorCode::Overflow, value_.get_str() + " does not fit in 64 bits");
  }
  BigInt hi = value_ >> 32;
  BigInt lo = value_ - (hi << 32);
  return (static_cast<std::uint64_t>(hi.get_ui()) << 32) | lo.get_ui();
}

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
  if (sgn(denominator) == 0) {
    throw Error(ErrorCode::DivisionByZero, "zero denominator");
  }
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  BigInt num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw Error(ErrorCode::ParseError, "signed denominator in '" + std::string(text) + "'");
  }
  BigInt den = parse_integer(den_text, text);
  if (sgn(den) == 0) {
    throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string Rational::to_string() const {
  if (q_.get_den() == 1) {
    return q_.get_num().get_str();
  }
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_fraction_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

double Rational::to_double() const {
  if (is_zero()) return 0.0;
  // Round to odd with a 64-bit significand, then let the uint64 -> double
  // conversion round to nearest; the two extra bits make this double rounding
  // exact (subnormal results aside).
  BigInt a = abs(q_.get_num());
  BigInt b = q_.get_den();
  long shift = 64 - (static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2)));
  if (shift >= 0) {
    a <<= static_cast<unsigned long>(shift);
  } else {
    b <<= static_cast<unsigned long>(-shift);
  }
  BigInt quot;
  BigInt rem;
  mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  bool sticky = sgn(rem) != 0;
  while (mpz_sizeinbase(quot.get_mpz_t(), 2) > 64) {
    sticky = sticky || mpz_odd_p(quot.get_mpz_t());
    quot >>= 1;
    --shift;
  }
  std::uint64_t bits = Natural(quot).to_u64();
  if (sticky) bits |= 1u;
  const double magnitude = std::ldexp(static_cast<double>(bits), static_cast<int>(-shift));
  return sign() < 0 ? -magnitude : magnitude;
}

Rational Rational::reciprocal() const {
  if (is_zero()) {
    throw Error(ErrorCode::DivisionByZero, "reciprocal of zero");
  }
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) {
    throw Error(ErrorCode::DivisionByZero, to_string() + " / 0");
  }
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational pow(const Rational& base, unsigned exponent) {
  BigInt num;
  BigInt den;
  const BigInt b_num = base.numerator();
  const BigInt b_den = base.denominator();
  mpz_pow_ui(num.get_mpz_t(), b_num.get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), b_den.get_mpz_t(), exponent);
  return Rational(num, den);
}

Natural binomial(const Natural& n, const Natural& k) {
  if (k > n) {
    return Natural(0);
  }
  // C(n, k) = C(n, n-k); iterate over the smaller side.
  BigInt kk = k.value();
  if (BigInt(n.value() - kk) < kk) {
    kk = n.value() - kk;
  }
  const std::uint64_t steps = Natural(kk).to_u64();
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= steps; ++i) {
    // acc * (n - steps + i) is divisible by i: acc = C(n-steps+i-1, i-1).
    acc *= BigInt(n.value() - kk + Natural(i).value());
    mpz_divexact(acc.get_mpz_t(), acc.get_mpz_t(), Natural(i).value().get_mpz_t());
  }
  return Natural(acc);
}

std::vector<BigInt> binomial_row(std::uint64_t n) {
  std::vector<BigInt> row;
  row.reserve(n + 1);
  row.emplace_back(1);
  for (std::uint64_t k = 1; k <= n; ++k) {
    BigInt next = row.back() * Natural(n - k + 1).value();
    mpz_divexact(next.get_mpz_t(), next.get_mpz_t(), Natural(k).value().get_mpz_t());
    row.push_back(std::move(next));
  }
  return row;
}

Natural factorial(const Natural& n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n.to_u64());
  return Natural(out);
}

Rational rising_product(const Rational& s, const Natural& n) {
  const std::uint64_t count = n.to_u64();
  Rational acc = 1;
  for (std::uint64_t k = 1; k <= count; ++k) {
    const Rational factor = s + Rational(Natural(k));
    if (factor.is_zero()) {
      throw Error(ErrorCode::ZeroFactor, "s + " + std::to_string(k) + " = 0");
    }
    acc *= factor;
  }
  return acc;
}

}  // namespace binid
