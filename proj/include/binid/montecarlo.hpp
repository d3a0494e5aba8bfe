#pragma once

// Seeded stochastic checks of the exponential order-statistic facts: samplers
// for X_(n) = max of n Exp(1), for sum_{j=1..n} Exp(j) and for integer-shape
// gamma variates, tail-probability and Laplace-transform estimators, and the
// two-sample Kolmogorov-Smirnov test.

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "binid/exact_arith.hpp"

namespace binid {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The 64-bit
/// key and the upper half of the 128-bit counter are fixed by the caller, the
/// lower half counts blocks, so every (key, stream) pair is an independent,
/// reproducible sequence.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  /// One application of the ten-round bijection.
  static Counter block(Counter counter, Key key) noexcept;
};

struct RngConfig {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const RngConfig&, const RngConfig&) = default;
};

/// Single-owner random stream for one RngConfig.
class RandomStream {
 public:
  explicit RandomStream(RngConfig config) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1): 52 random bits centred in their
  /// cell. The extreme values 2^-53 and 1 - 2^-53 are exact doubles, so 0 and
  /// 1 are never returned.
  double uniform_open() noexcept;

  const RngConfig& config() const noexcept { return config_; }

 private:
  RngConfig config_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
};

/// Inverse-CDF map -ln(u)/rate.
double exp_from_uniform(double u, double rate);

/// Exp(rate) draw. Throws InvalidRate for rate <= 0.
double exp_sample(double rate, RandomStream& rng);

/// max of n Exp(1) draws; NRequired for n = 0.
double sample_max_exp(unsigned n, RandomStream& rng);

/// sum_{j=1..n} Exp(j); NRequired for n = 0.
double sample_sum_exp(unsigned n, RandomStream& rng);

/// Gamma(shape m, rate s) as a sum of m Exp(s) draws.
double sample_gamma_integer(unsigned m, double s, RandomStream& rng);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::optional<Rational> exact_reference;
  RngConfig config;
};

/// Minimum sample count accepted by the estimators.
inline constexpr std::uint64_t kMinEstimatorSamples = 10'000;

/// Fraction of paired draws with T_m > X_(n), T_m ~ Gamma(m, s). The
/// Rational overload also fills exact_reference from tail_prob_exact.
MonteCarloEstimate estimate_tail_prob(unsigned m, double s, unsigned n, std::uint64_t samples, RngConfig cfg);
MonteCarloEstimate estimate_tail_prob(unsigned m, const Rational& s, unsigned n, std::uint64_t samples,
                                      RngConfig cfg);

/// Sample mean of exp(-s X_(n)). The Rational overload fills exact_reference
/// with prod_{k=1..n} k/(s+k).
MonteCarloEstimate empirical_laplace(double s, unsigned n, std::uint64_t samples, RngConfig cfg);
MonteCarloEstimate empirical_laplace(const Rational& s, unsigned n, std::uint64_t samples, RngConfig cfg);

/// |estimate - exact_reference| / std_error. Requires exact_reference.
double z_score(const MonteCarloEstimate& e);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
};

/// Minimum size of each KS sample.
inline constexpr std::size_t kMinKsSamples = 100;

/// Two-sample KS: exact sup |F1 - F2| over the merged sample, p-value from
/// the asymptotic Kolmogorov distribution at sqrt(n1 n2/(n1+n2)) * D.
KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys);

/// Q(lambda) = sum_{k>=1} 2 (-1)^(k-1) exp(-2 k^2 lambda^2), clamped to [0,1].
double kolmogorov_survival(double lambda);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::uint64_t count = 0;
};

SampleMoments sample_moments(std::span<const double> xs);

}  // namespace binid
