#include "binid/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "binid/identities.hpp"

namespace binid {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

void require_n(unsigned n) {
  if (n == 0) throw Error(ErrorCode::NRequired, "n must be >= 1");
}

void require_samples(std::uint64_t samples) {
  if (samples < kMinEstimatorSamples) {
    throw Error(ErrorCode::InsufficientSamples,
                std::to_string(samples) + " samples requested, need at least " + std::to_string(kMinEstimatorSamples));
  }
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RandomStream::RandomStream(RngConfig config) noexcept : config_(config) {}

std::uint64_t RandomStream::next_u64() noexcept {
  if (buffered_ == 0) {
    const Philox4x32::Counter ctr = {
        static_cast<std::uint32_t>(block_index_), static_cast<std::uint32_t>(block_index_ >> 32),
        static_cast<std::uint32_t>(config_.stream_id), static_cast<std::uint32_t>(config_.stream_id >> 32)};
    const Philox4x32::Key key = {static_cast<std::uint32_t>(config_.master_seed),
                                 static_cast<std::uint32_t>(config_.master_seed >> 32)};
    buffer_ = Philox4x32::block(ctr, key);
    ++block_index_;
    buffered_ = 2;
  }
  const int pair = 2 - buffered_;
  --buffered_;
  return (static_cast<std::uint64_t>(buffer_[2 * pair + 1]) << 32) | buffer_[2 * pair];
}

double RandomStream::uniform_open() noexcept {
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double exp_from_uniform(double u, double rate) { return -std::log(u) / rate; }

double exp_sample(double rate, RandomStream& rng) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::InvalidRate, "rate must be a finite positive number, got " + std::to_string(rate));
  }
  return exp_from_uniform(rng.uniform_open(), rate);
}

double sample_max_exp(unsigned n, RandomStream& rng) {
  require_n(n);
  double best = 0.0;
  for (unsigned i = 0; i < n; ++i) best = std::max(best, exp_sample(1.0, rng));
  return best;
}

double sample_sum_exp(unsigned n, RandomStream& rng) {
  require_n(n);
  double sum = 0.0;
  for (unsigned j = 1; j <= n; ++j) sum += exp_sample(static_cast<double>(j), rng);
  return sum;
}

double sample_gamma_integer(unsigned m, double s, RandomStream& rng) {
  if (m == 0) throw Error(ErrorCode::MRequired, "gamma shape m must be >= 1");
  double sum = 0.0;
  for (unsigned i = 0; i < m; ++i) sum += exp_sample(s, rng);
  return sum;
}

MonteCarloEstimate estimate_tail_prob(unsigned m, double s, unsigned n, std::uint64_t samples, RngConfig cfg) {
  require_n(n);
  require_samples(samples);
  RandomStream rng(cfg);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double t = sample_gamma_integer(m, s, rng);
    const double x = sample_max_exp(n, rng);
    if (t > x) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, std::nullopt, cfg};
}

MonteCarloEstimate estimate_tail_prob(unsigned m, const Rational& s, unsigned n, std::uint64_t samples,
                                      RngConfig cfg) {
  if (s.sign() <= 0) throw Error(ErrorCode::NonPositiveS, "s must be > 0, got " + s.to_string());
  MonteCarloEstimate e = estimate_tail_prob(m, s.to_double(), n, samples, cfg);
  e.exact_reference = tail_prob_exact(m, s, n);
  return e;
}

MonteCarloEstimate empirical_laplace(double s, unsigned n, std::uint64_t samples, RngConfig cfg) {
  if (!(s > 0.0)) throw Error(ErrorCode::NonPositiveS, "s must be > 0, got " + std::to_string(s));
  require_n(n);
  require_samples(samples);
  RandomStream rng(cfg);
  std::vector<double> values;
  values.reserve(samples);
  for (std::uint64_t i = 0; i < samples; ++i) {
    values.push_back(std::exp(-s * sample_max_exp(n, rng)));
  }
  const SampleMoments mom = sample_moments(values);
  return {mom.mean, std::sqrt(mom.variance / static_cast<double>(samples)), samples, std::nullopt, cfg};
}

MonteCarloEstimate empirical_laplace(const Rational& s, unsigned n, std::uint64_t samples, RngConfig cfg) {
  if (s.sign() <= 0) throw Error(ErrorCode::NonPositiveS, "s must be > 0, got " + s.to_string());
  MonteCarloEstimate e = empirical_laplace(s.to_double(), n, samples, cfg);
  e.exact_reference = eval_basic_rhs(s, n);
  return e;
}

double z_score(const MonteCarloEstimate& e) {
  if (!e.exact_reference) {
    throw std::logic_error("z-score needs an exact reference");
  }
  const double diff = std::abs(e.estimate - e.exact_reference->to_double());
  if (e.std_error == 0.0) {
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return diff / e.std_error;
}

double kolmogorov_survival(double lambda) {
  // Q(0.2) differs from 1 by less than 1e-20; the series converges too slowly
  // to be useful below that.
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < kMinKsSamples || ys.size() < kMinKsSamples) {
    throw Error(ErrorCode::TooFewSamples, "KS needs at least " + std::to_string(kMinKsSamples) +
                                              " values per sample, got " + std::to_string(xs.size()) + " and " +
                                              std::to_string(ys.size()));
  }
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    // Consume every copy of x from both samples before comparing the CDFs.
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  const double effective = n1 * n2 / (n1 + n2);
  return {d, kolmogorov_survival(std::sqrt(effective) * d), a.size(), b.size()};
}

SampleMoments sample_moments(std::span<const double> xs) {
  SampleMoments out;
  double m2 = 0.0;
  for (double x : xs) {
    ++out.count;
    const double delta = x - out.mean;
    out.mean += delta / static_cast<double>(out.count);
    m2 += delta * (x - out.mean);
  }
  out.variance = out.count > 1 ? m2 / static_cast<double>(out.count - 1) : 0.0;
  return out;
}

}  // namespace binid
