#pragma once

// Truncated Taylor (jet) arithmetic. A Jet<Scalar> of order K at base point s
// stores h(s), h'(s), h''(s)/2!, ..., h^(K)(s)/K!. Arithmetic follows the
// Cauchy-product rules, so composing jets yields exact derivatives at s when
// Scalar is Rational. Jet<double> is used for floating-point cross-checks.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "binid/error.hpp"
#include "binid/exact_arith.hpp"

namespace binid {

template <typename Scalar>
class Jet {
 public:
  using scalar_type = Scalar;

  /// coefficients must be non-empty; order = coefficients.size() - 1. A jet
  /// without a base point is a constant and combines with jets at any point.
  Jet(std::optional<Scalar> base_point, std::vector<Scalar> coefficients)
      : base_(std::move(base_point)), coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) {
      throw Error(ErrorCode::OrderExceeded, "a jet needs at least the value coefficient");
    }
  }

  const std::optional<Scalar>& base_point() const noexcept { return base_; }
  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const std::vector<Scalar>& coefficients() const noexcept { return coeffs_; }
  const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }
  const Scalar& value() const { return coeffs_.front(); }

  Jet operator-() const {
    Jet out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  /// Coefficient equality; the base point takes part only when both are set.
  friend bool operator==(const Jet& a, const Jet& b) {
    if (a.base_ && b.base_ && !(*a.base_ == *b.base_)) return false;
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::optional<Scalar> base_;
  std::vector<Scalar> coeffs_;
};

namespace detail {

/// Returns the base point shared by a and b.
template <typename Scalar>
std::optional<Scalar> common_base(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  if (a.order() != b.order()) {
    throw Error(ErrorCode::MixedJets,
                "jet orders differ (" + std::to_string(a.order()) + " vs " + std::to_string(b.order()) + ")");
  }
  if (a.base_point() && b.base_point() && !(*a.base_point() == *b.base_point())) {
    throw Error(ErrorCode::MixedJets, "jets are expanded at different points");
  }
  return a.base_point() ? a.base_point() : b.base_point();
}

template <typename Scalar>
bool is_zero(const Scalar& x) {
  return x == Scalar(0);
}

}  // namespace detail

template <typename Scalar>
Jet<Scalar> jet_constant(Scalar c, std::size_t order) {
  std::vector<Scalar> coeffs(order + 1, Scalar(0));
  coeffs[0] = std::move(c);
  return Jet<Scalar>(std::nullopt, std::move(coeffs));
}

/// The identity function h(x) = x expanded at s.
template <typename Scalar>
Jet<Scalar> jet_variable(Scalar s, std::size_t order) {
  std::vector<Scalar> coeffs(order + 1, Scalar(0));
  coeffs[0] = s;
  if (order >= 1) coeffs[1] = Scalar(1);
  return Jet<Scalar>(std::move(s), std::move(coeffs));
}

template <typename Scalar>
Jet<Scalar> jet_add(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  auto base = detail::common_base(a, b);
  std::vector<Scalar> out(a.coefficients());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return Jet<Scalar>(std::move(base), std::move(out));
}

template <typename Scalar>
Jet<Scalar> jet_sub(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  auto base = detail::common_base(a, b);
  std::vector<Scalar> out(a.coefficients());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return Jet<Scalar>(std::move(base), std::move(out));
}

/// Truncated Cauchy product. Zero coefficients of b are skipped, which makes
/// products with low-degree polynomials linear in the order.
template <typename Scalar>
Jet<Scalar> jet_mul(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  auto base = detail::common_base(a, b);
  const std::size_t len = a.order() + 1;
  std::vector<Scalar> out(len, Scalar(0));
  for (std::size_t j = 0; j < len; ++j) {
    if (detail::is_zero(b[j])) continue;
    for (std::size_t i = 0; i + j < len; ++i) {
      out[i + j] += a[i] * b[j];
    }
  }
  return Jet<Scalar>(std::move(base), std::move(out));
}

/// Solves a = q * b for q coefficient by coefficient:
///   q_i = (a_i - sum_{j=1..i} b_j q_{i-j}) / b_0.
template <typename Scalar>
Jet<Scalar> jet_div(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  auto base = detail::common_base(a, b);
  if (detail::is_zero(b.value())) {
    throw Error(ErrorCode::DivisionByZeroJet, "divisor jet has zero value coefficient");
  }
  const std::size_t len = a.order() + 1;
  std::vector<Scalar> q;
  q.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    Scalar acc = a[i];
    for (std::size_t j = 1; j <= i; ++j) {
      if (detail::is_zero(b[j])) continue;
      acc -= b[j] * q[i - j];
    }
    acc /= b.value();
    q.push_back(std::move(acc));
  }
  return Jet<Scalar>(std::move(base), std::move(q));
}

template <typename Scalar>
Jet<Scalar> operator+(const Jet<Scalar>& a, const Jet<Scalar>& b) { return jet_add(a, b); }
template <typename Scalar>
Jet<Scalar> operator-(const Jet<Scalar>& a, const Jet<Scalar>& b) { return jet_sub(a, b); }
template <typename Scalar>
Jet<Scalar> operator*(const Jet<Scalar>& a, const Jet<Scalar>& b) { return jet_mul(a, b); }
template <typename Scalar>
Jet<Scalar> operator/(const Jet<Scalar>& a, const Jet<Scalar>& b) { return jet_div(a, b); }

/// Scales every coefficient by c.
template <typename Scalar>
Jet<Scalar> jet_scale(const Jet<Scalar>& a, const Scalar& c) {
  std::vector<Scalar> out(a.coefficients());
  for (auto& x : out) x *= c;
  return Jet<Scalar>(a.base_point(), std::move(out));
}

/// h^(k)(base_point) = k! * coefficients[k].
template <typename Scalar>
Scalar jet_derivative(const Jet<Scalar>& a, std::size_t k) {
  if (k > a.order()) {
    throw Error(ErrorCode::OrderExceeded,
                "derivative " + std::to_string(k) + " requested from a jet of order " + std::to_string(a.order()));
  }
  Scalar out = a[k];
  for (std::size_t i = 2; i <= k; ++i) out *= Scalar(static_cast<int>(i));
  return out;
}

using RationalJet = Jet<Rational>;

}  // namespace binid
