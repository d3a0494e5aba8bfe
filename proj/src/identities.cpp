#include "binid/identities.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <thread>
#include <tuple>

namespace binid {

namespace {

void require_positive(const Rational& s) {
  if (s.sign() <= 0) {
    throw Error(ErrorCode::NonPositiveS, "s must be > 0, got " + s.to_string());
  }
}

void require_m(unsigned m) {
  if (m == 0) {
    throw Error(ErrorCode::MRequired, "m must be >= 1");
  }
}

Rational from_unsigned(unsigned v) { return Rational(static_cast<long>(v)); }

Rational signed_binomial(const std::vector<BigInt>& row, std::size_t k) {
  Rational c(row[k]);
  return (k % 2 == 0) ? c : -c;
}

}  // namespace

std::string_view to_string(IdentityId id) noexcept {
  switch (id) {
    case IdentityId::Basic: return "basic";
    case IdentityId::Squared: return "squared";
    case IdentityId::GeneralM: return "general_m";
    case IdentityId::InversionFirst: return "inversion_first";
    case IdentityId::InversionSecond: return "inversion_second";
    case IdentityId::DerivativeFG: return "derivative_fg";
    case IdentityId::TailDerivativeForm: return "tail_derivative_form";
  }
  return "unknown";
}

std::optional<IdentityId> parse_identity(std::string_view name) noexcept {
  for (IdentityId id : kAllIdentities) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

bool uses_m(IdentityId id) noexcept {
  return id == IdentityId::GeneralM || id == IdentityId::TailDerivativeForm;
}

Rational eval_basic_lhs(const Rational& s, unsigned n) {
  require_positive(s);
  const auto row = binomial_row(n);
  Rational sum;
  for (unsigned k = 0; k <= n; ++k) {
    sum += signed_binomial(row, k) * (s / (s + from_unsigned(k)));
  }
  return sum;
}

Rational eval_basic_rhs(const Rational& s, unsigned n) {
  require_positive(s);
  Rational prod = 1;
  for (unsigned k = 1; k <= n; ++k) {
    const Rational kk = from_unsigned(k);
    prod *= kk / (s + kk);
  }
  return prod;
}

RationalJet eval_f_jet(const Rational& s, unsigned n, std::size_t order) {
  require_positive(s);
  const auto row = binomial_row(n);
  const RationalJet x = jet_variable(s, order);
  RationalJet sum = jet_constant(Rational(0), order);
  for (unsigned k = 0; k <= n; ++k) {
    const RationalJet term = x / (x + jet_constant(from_unsigned(k), order));
    sum = sum + jet_scale(term, signed_binomial(row, k));
  }
  return sum;
}

RationalJet eval_g_jet(const Rational& s, unsigned n, std::size_t order) {
  require_positive(s);
  const RationalJet x = jet_variable(s, order);
  // n! / ((x+1)...(x+n)): the factors are linear, so only one division.
  RationalJet denom = jet_constant(Rational(1), order);
  for (unsigned k = 1; k <= n; ++k) {
    denom = denom * (x + jet_constant(from_unsigned(k), order));
  }
  const RationalJet prod = jet_constant(Rational(factorial(n)), order) / denom;
  // Keep the base point even for n = 0 so derivatives are well defined.
  return RationalJet(s, prod.coefficients());
}

Rational tail_prob_derivative_form(const RationalJet& h, unsigned m) {
  require_m(m);
  if (!h.base_point()) {
    throw Error(ErrorCode::MixedJets, "derivative form needs a jet with a base point");
  }
  if (h.order() + 1 < m) {
    throw Error(ErrorCode::OrderExceeded,
                "need a jet of order " + std::to_string(m - 1) + ", got " + std::to_string(h.order()));
  }
  // s^k/k! * h^(k)(s) = s^k * coefficients[k]
  const Rational& s = *h.base_point();
  Rational sum;
  Rational s_pow = 1;
  for (unsigned k = 0; k < m; ++k) {
    const Rational term = s_pow * h[k];
    sum += (k % 2 == 0) ? term : -term;
    s_pow *= s;
  }
  return sum;
}

Rational tail_prob_conditioning(unsigned m, const Rational& s, unsigned n) {
  require_positive(s);
  require_m(m);
  const auto row = binomial_row(n);
  Rational sum;
  for (unsigned k = 0; k <= n; ++k) {
    sum += signed_binomial(row, k) * pow(s / (s + from_unsigned(k)), m);
  }
  return sum;
}

Rational tail_prob_exact(unsigned m, const Rational& s, unsigned n) {
  require_positive(s);
  require_m(m);
  const Rational via_derivatives = tail_prob_derivative_form(eval_f_jet(s, n, m - 1), m);
  const Rational via_conditioning = tail_prob_conditioning(m, s, n);
  if (via_derivatives != via_conditioning) {
    throw Error(ErrorCode::InternalRouteMismatch,
                "P(T_" + std::to_string(m) + " > X_(" + std::to_string(n) + ")) at s=" + s.to_string() + ": " +
                    via_derivatives.to_string() + " != " + via_conditioning.to_string());
  }
  return via_derivatives;
}

IdentityPair eval_squared_identity(const Rational& s, unsigned n) {
  require_positive(s);
  const Rational lhs = tail_prob_conditioning(2, s, n);
  Rational sum;
  for (unsigned j = 0; j <= n; ++j) {
    sum += s / (s + from_unsigned(j));
  }
  return {lhs, eval_basic_rhs(s, n) * sum};
}

IdentityPair eval_general_m(const Rational& s, unsigned n, unsigned m) {
  require_positive(s);
  require_m(m);
  if (n == 0) {
    throw Error(ErrorCode::NRequired, "the general-m identity needs n >= 1");
  }
  const Rational lhs = tail_prob_conditioning(m, s, n);

  const auto row = binomial_row(n - 1);
  Rational inner;
  for (unsigned j = 0; j < n; ++j) {
    const Rational ratio = s / (s + from_unsigned(j + 1));
    Rational power = ratio;
    Rational over_k;
    for (unsigned k = 0; k < m; ++k) {
      over_k += power;
      power *= ratio;
    }
    inner += signed_binomial(row, j) * over_k;
  }
  return {lhs, from_unsigned(n) / s * inner};
}

IdentityPair eval_inversion_first(const Rational& s, unsigned n) {
  require_positive(s);
  const auto row = binomial_row(n);
  Rational lhs;
  Rational partial_product = 1;
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) {
      const Rational kk = from_unsigned(k);
      partial_product *= kk / (s + kk);
    }
    lhs += signed_binomial(row, k) * partial_product;
  }
  return {lhs, s / (s + from_unsigned(n))};
}

IdentityPair eval_inversion_second(const Rational& s, unsigned n) {
  require_positive(s);
  const auto row = binomial_row(n);
  Rational lhs;
  Rational partial_product = 1;
  Rational partial_sum;
  for (unsigned k = 0; k <= n; ++k) {
    const Rational kk = from_unsigned(k);
    if (k > 0) {
      partial_product *= kk / (s + kk);
    }
    partial_sum += s / (s + kk);
    lhs += signed_binomial(row, k) * partial_product * partial_sum;
  }
  return {lhs, pow(s / (s + from_unsigned(n)), 2)};
}

IdentityPair eval_derivative_identity(const Rational& s, unsigned n) {
  require_positive(s);
  Rational harmonic;
  for (unsigned j = 1; j <= n; ++j) {
    harmonic += (from_unsigned(j) + s).reciprocal();
  }
  const Rational lhs = eval_basic_rhs(s, n) * harmonic;

  const auto row = binomial_row(n);
  Rational rhs;
  for (unsigned k = 1; k <= n; ++k) {
    const Rational kk = from_unsigned(k);
    // (-1)^(k+1) = -(-1)^k
    rhs -= signed_binomial(row, k) * kk / pow(kk + s, 2);
  }
  return {lhs, rhs};
}

std::vector<Rational> binomial_invert(std::span<const Rational> a) {
  if (a.empty()) {
    throw Error(ErrorCode::EmptySequence, "binomial inversion of an empty sequence");
  }
  std::vector<Rational> b;
  b.reserve(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    const auto row = binomial_row(n);
    Rational sum;
    for (std::size_t k = 0; k <= n; ++k) {
      sum += signed_binomial(row, k) * a[k];
    }
    b.push_back(std::move(sum));
  }
  return b;
}

VerificationReport verify(IdentityId id, const IdentityParams& params) {
  const Rational& s = params.s;
  const unsigned n = params.n;
  auto need_m = [&]() -> unsigned {
    if (!params.m) {
      throw Error(ErrorCode::MRequired, std::string(to_string(id)) + " needs m");
    }
    return *params.m;
  };

  IdentityPair pair;
  switch (id) {
    case IdentityId::Basic:
      pair = {eval_basic_lhs(s, n), eval_basic_rhs(s, n)};
      break;
    case IdentityId::Squared:
      pair = eval_squared_identity(s, n);
      break;
    case IdentityId::GeneralM:
      pair = eval_general_m(s, n, need_m());
      break;
    case IdentityId::InversionFirst:
      pair = eval_inversion_first(s, n);
      break;
    case IdentityId::InversionSecond:
      pair = eval_inversion_second(s, n);
      break;
    case IdentityId::DerivativeFG:
      pair = eval_derivative_identity(s, n);
      break;
    case IdentityId::TailDerivativeForm: {
      const unsigned m = need_m();
      require_m(m);
      pair = {tail_prob_derivative_form(eval_f_jet(s, n, m - 1), m),
              tail_prob_derivative_form(eval_g_jet(s, n, m - 1), m)};
      break;
    }
    default:
      throw Error(ErrorCode::UnknownIdentity, std::to_string(static_cast<int>(id)));
  }
  const bool equal = pair.lhs == pair.rhs;
  return VerificationReport{id, params, std::move(pair.lhs), std::move(pair.rhs), equal};
}

SweepGrid default_sweep_grid() {
  SweepGrid grid;
  for (const char* s : {"1/7", "1/2", "1", "3/2", "2", "10", "1000/3"}) {
    grid.s_values.push_back(Rational::parse(s));
  }
  return grid;
}

namespace {

// One unit of sweep work: a single grid point, or for the tail derivative form
// every m at one (s, n) so the jets are built once at the largest order.
struct SweepTask {
  IdentityId id;
  Rational s;
  unsigned n = 0;
  std::optional<unsigned> m;
  unsigned m_max = 0;
};

std::vector<VerificationReport> run_task(const SweepTask& task) {
  if (task.id != IdentityId::TailDerivativeForm) {
    return {verify(task.id, IdentityParams{task.s, task.n, task.m})};
  }
  const unsigned m_min = *task.m;
  require_m(m_min);
  const RationalJet f = eval_f_jet(task.s, task.n, task.m_max - 1);
  const RationalJet g = eval_g_jet(task.s, task.n, task.m_max - 1);
  std::vector<VerificationReport> out;
  for (unsigned m = m_min; m <= task.m_max; ++m) {
    Rational lhs = tail_prob_derivative_form(f, m);
    Rational rhs = tail_prob_derivative_form(g, m);
    const bool equal = lhs == rhs;
    out.push_back({task.id, IdentityParams{task.s, task.n, m}, std::move(lhs), std::move(rhs), equal});
  }
  return out;
}

}  // namespace

std::vector<VerificationReport> sweep(std::span<const IdentityId> ids, const SweepGrid& grid,
                                      const SweepOptions& options) {
  std::vector<SweepTask> points;
  for (IdentityId id : ids) {
    unsigned n_min = grid.n_min;
    if (id == IdentityId::GeneralM && options.skip_out_of_domain) {
      n_min = std::max(n_min, 1u);
    }
    for (unsigned n = n_min; n <= grid.n_max; ++n) {
      for (const Rational& s : grid.s_values) {
        if (id == IdentityId::TailDerivativeForm) {
          if (grid.m_min <= grid.m_max) points.push_back({id, s, n, grid.m_min, grid.m_max});
        } else if (uses_m(id)) {
          for (unsigned m = grid.m_min; m <= grid.m_max; ++m) {
            points.push_back({id, s, n, m, m});
          }
        } else {
          points.push_back({id, s, n, std::nullopt, 0});
        }
      }
    }
  }

  std::vector<std::vector<VerificationReport>> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = run_task(points[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(points.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<VerificationReport> out;
  for (auto& group : results) {
    for (auto& r : group) out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const VerificationReport& a, const VerificationReport& b) {
    const auto key = [](const VerificationReport& r) {
      return std::make_tuple(static_cast<int>(r.identity), r.params.n, r.params.m.value_or(0));
    };
    if (key(a) != key(b)) return key(a) < key(b);
    return a.params.s < b.params.s;
  });
  return out;
}

}  // namespace binid
