#pragma once

// Exact evaluators for both sides of every binomial identity in the family
// built on
//
//   sum_{k=0..n} (-1)^k C(n,k) s/(s+k) = prod_{k=1..n} k/(s+k),
//
// the identity registry and the grid-sweep verification engine.
//
// Throughout, f(s) denotes the alternating-sum side (the Laplace transform
// E[exp(-s X_(n))] of the maximum of n unit exponentials) and g(s) the
// product side. All evaluators require s > 0.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "binid/exact_arith.hpp"
#include "binid/jets.hpp"

namespace binid {

enum class IdentityId {
  Basic,
  Squared,
  GeneralM,
  InversionFirst,
  InversionSecond,
  DerivativeFG,
  TailDerivativeForm,
};

inline constexpr std::array<IdentityId, 7> kAllIdentities = {
    IdentityId::Basic,          IdentityId::Squared,         IdentityId::GeneralM,
    IdentityId::InversionFirst, IdentityId::InversionSecond, IdentityId::DerivativeFG,
    IdentityId::TailDerivativeForm,
};

/// Stable snake_case name used on the command line and in reports.
std::string_view to_string(IdentityId id) noexcept;
std::optional<IdentityId> parse_identity(std::string_view name) noexcept;

/// True for the identities parameterised by m.
bool uses_m(IdentityId id) noexcept;

struct IdentityParams {
  Rational s;
  unsigned n = 0;
  std::optional<unsigned> m;
};

struct IdentityPair {
  Rational lhs;
  Rational rhs;
};

struct VerificationReport {
  IdentityId identity;
  IdentityParams params;
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

// ---------------------------------------------------------------------------
// Evaluators

/// sum_{k=0..n} (-1)^k C(n,k) s/(s+k)
Rational eval_basic_lhs(const Rational& s, unsigned n);

/// prod_{k=1..n} k/(s+k) = n!/((s+1)...(s+n))
Rational eval_basic_rhs(const Rational& s, unsigned n);

/// Jet of f at s, computed by running the alternating sum in jet arithmetic.
RationalJet eval_f_jet(const Rational& s, unsigned n, std::size_t order);

/// Jet of g at s, computed by running the product in jet arithmetic.
RationalJet eval_g_jet(const Rational& s, unsigned n, std::size_t order);

/// sum_{k=0..m-1} (-1)^k s^k/k! h^(k)(s) for a jet h of order >= m-1. With
/// h = f or h = g this is P(T_m > X_(n)), T_m ~ Gamma(shape m, rate s).
Rational tail_prob_derivative_form(const RationalJet& h, unsigned m);

/// P(T_m > X_(n)) by conditioning on T_m:
///   sum_{k=0..n} (-1)^k C(n,k) (s/(s+k))^m.
Rational tail_prob_conditioning(unsigned m, const Rational& s, unsigned n);

/// P(T_m > X_(n)), evaluated through the derivatives of f and by direct
/// conditioning on T_m. The two must agree; a mismatch throws
/// InternalRouteMismatch.
Rational tail_prob_exact(unsigned m, const Rational& s, unsigned n);

/// lhs = sum (-1)^k C(n,k) (s/(s+k))^2,
/// rhs = prod_{k=1..n} k/(s+k) * sum_{j=0..n} s/(s+j).
IdentityPair eval_squared_identity(const Rational& s, unsigned n);

/// lhs = sum_{k=0..n} (-1)^k C(n,k) (s/(s+k))^m,
/// rhs = (n/s) sum_{k=0..m-1} sum_{j=0..n-1} (-1)^j C(n-1,j) (s/(s+j+1))^(k+1).
/// Requires n >= 1 (NRequired) and m >= 1 (MRequired).
IdentityPair eval_general_m(const Rational& s, unsigned n, unsigned m);

/// lhs = sum (-1)^k C(n,k) prod_{j=1..k} j/(s+j), rhs = s/(s+n).
IdentityPair eval_inversion_first(const Rational& s, unsigned n);

/// lhs = sum (-1)^k C(n,k) prod_{j=1..k} j/(s+j) * sum_{i=0..k} s/(s+i),
/// rhs = (s/(s+n))^2.
IdentityPair eval_inversion_second(const Rational& s, unsigned n);

/// lhs = prod_{k=1..n} k/(s+k) * sum_{j=1..n} 1/(j+s),
/// rhs = sum (-1)^(k+1) C(n,k) k/(k+s)^2. Both sides equal -f'(s) = -g'(s).
IdentityPair eval_derivative_identity(const Rational& s, unsigned n);

/// b_n = sum_{k=0..n} (-1)^k C(n,k) a_k. Throws EmptySequence for empty a.
std::vector<Rational> binomial_invert(std::span<const Rational> a);

// ---------------------------------------------------------------------------
// Verification engine

/// Evaluates both sides of `id` at `params`. Parameter errors from the
/// evaluators propagate unchanged.
VerificationReport verify(IdentityId id, const IdentityParams& params);

struct SweepGrid {
  std::vector<Rational> s_values;
  unsigned n_min = 0;
  unsigned n_max = 100;
  unsigned m_min = 1;
  unsigned m_max = 8;
};

/// s in {1/7, 1/2, 1, 3/2, 2, 10, 1000/3}, n in 0..100, m in 1..8.
SweepGrid default_sweep_grid();

struct SweepOptions {
  /// Drop grid points outside an identity's domain (n = 0 for GeneralM)
  /// instead of failing on them.
  bool skip_out_of_domain = false;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Verifies every identity in `ids` on every grid point. The m range is only
/// iterated for identities that use m. Output is sorted by
/// (identity, n, m, s) regardless of scheduling.
std::vector<VerificationReport> sweep(std::span<const IdentityId> ids, const SweepGrid& grid,
                                      const SweepOptions& options = {});

}  // namespace binid
