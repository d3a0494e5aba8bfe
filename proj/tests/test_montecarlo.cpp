#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "binid/montecarlo.hpp"

using binid::Error;
using binid::ErrorCode;
using binid::RandomStream;
using binid::Rational;
using binid::RngConfig;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected binid::Error");
  return ErrorCode::ParseError;
}

template <typename Sampler>
std::vector<double> draw(std::size_t count, RngConfig cfg, Sampler sampler) {
  RandomStream rng(cfg);
  std::vector<double> out(count);
  for (auto& x : out) x = sampler(rng);
  return out;
}

// sup_t |F_emp(t) - F(t)| evaluated on both sides of every jump.
template <typename Cdf>
double one_sample_ks(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs((i + 1) / n - f), std::abs(i / n - f)});
  }
  return d;
}

// Asymptotic alpha = 0.01 critical value of the one-sample KS statistic.
double ks_band(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

}  // namespace

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using P = binid::Philox4x32;
  CHECK(P::block({0, 0, 0, 0}, {0, 0}) == P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(P::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(P::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a({42, 0});
  RandomStream b({42, 0});
  RandomStream c({42, 1});
  RandomStream d({43, 0});
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    same_c += x == c.next_u64();
    same_d += x == d.next_u64();
  }
  CHECK(same_c == 0);
  CHECK(same_d == 0);
}

TEST_CASE("uniforms stay inside the open unit interval") {
  RandomStream rng({7, 3});
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 1'000'000; ++i) {
    const double u = rng.uniform_open();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  // Extreme bit patterns map strictly inside as well.
  CHECK((0.0 + 0.5) * 0x1.0p-52 > 0.0);
  CHECK((static_cast<double>((~0ull) >> 12) + 0.5) * 0x1.0p-52 < 1.0);
}

TEST_CASE("exponential inverse CDF") {
  CHECK(binid::exp_from_uniform(std::exp(-2.0), 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(binid::exp_from_uniform(std::exp(-6.0), 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  RandomStream rng({1, 0});
  CHECK(code_of([&] { binid::exp_sample(0.0, rng); }) == ErrorCode::InvalidRate);
  CHECK(code_of([&] { binid::sample_max_exp(0, rng); }) == ErrorCode::NRequired);
  CHECK(code_of([&] { binid::sample_sum_exp(0, rng); }) == ErrorCode::NRequired);
  CHECK(code_of([&] { binid::sample_gamma_integer(0, 1.0, rng); }) == ErrorCode::MRequired);
}

TEST_CASE("sample moments match the exact mean and variance within 4 and 5 sigma") {
  constexpr std::size_t N = 1'000'000;
  const double rootN = std::sqrt(static_cast<double>(N));

  const auto exp1 = binid::sample_moments(draw(N, {101, 0}, [](RandomStream& r) { return binid::exp_sample(1.0, r); }));
  CHECK(std::abs(exp1.mean - 1.0) <= 4.0 * 1.0 / rootN);

  const auto max2 = binid::sample_moments(draw(N, {101, 1}, [](RandomStream& r) { return binid::sample_max_exp(2, r); }));
  CHECK(std::abs(max2.mean - 1.5) <= 4.0 * std::sqrt(1.25) / rootN);

  const auto gamma = binid::sample_moments(
      draw(N, {101, 2}, [](RandomStream& r) { return binid::sample_gamma_integer(4, 2.0, r); }));
  // mean m/s = 2, variance m/s^2 = 1
  CHECK(std::abs(gamma.mean - 2.0) <= 4.0 * 1.0 / rootN);

  for (unsigned n : {1u, 2u, 3u, 5u, 10u}) {
    const auto sum = binid::sample_moments(
        draw(N, {202, n}, [n](RandomStream& r) { return binid::sample_sum_exp(n, r); }));
    // Exp(j): variance 1/j^2, fourth central moment 9/j^4. For the sum,
    // mu4 = sum 9/j^4 + 3 (var^2 - sum 1/j^4).
    double mean = 0.0;
    double var = 0.0;
    double quartic = 0.0;
    for (unsigned j = 1; j <= n; ++j) {
      mean += 1.0 / j;
      var += 1.0 / (double(j) * j);
      quartic += 1.0 / std::pow(double(j), 4);
    }
    const double mu4 = 9.0 * quartic + 3.0 * (var * var - quartic);
    CAPTURE(n);
    CHECK(std::abs(sum.mean - mean) <= 4.0 * std::sqrt(var) / rootN);
    CHECK(std::abs(sum.variance - var) <= 5.0 * std::sqrt((mu4 - var * var) / N));
  }
}

TEST_CASE("empirical CDFs sit inside the KS band of the reference curves") {
  constexpr std::size_t N = 100'000;
  const auto maxes = draw(N, {404, 0}, [](RandomStream& r) { return binid::sample_max_exp(3, r); });
  CHECK(one_sample_ks(maxes, [](double t) { return std::pow(1.0 - std::exp(-t), 3); }) <= ks_band(N));

  // P(T_2 > x) = e^{-sx}(1 + sx), s = 1.5
  const auto gammas = draw(N, {404, 1}, [](RandomStream& r) { return binid::sample_gamma_integer(2, 1.5, r); });
  CHECK(one_sample_ks(gammas, [](double x) { return 1.0 - std::exp(-1.5 * x) * (1.0 + 1.5 * x); }) <= ks_band(N));
}

TEST_CASE("two-sample KS") {
  std::vector<double> xs = draw(500, {5, 0}, [](RandomStream& r) { return binid::exp_sample(1.0, r); });
  const auto same = binid::ks_two_sample(xs, xs);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);
  CHECK(same.n1 == 500);

  const auto maxes = draw(100'000, {2026, 10}, [](RandomStream& r) { return binid::sample_max_exp(5, r); });
  const auto sums = draw(100'000, {2026, 11}, [](RandomStream& r) { return binid::sample_sum_exp(5, r); });
  CHECK(binid::ks_two_sample(maxes, sums).p_value > 0.01);

  const auto rate1 = draw(10'000, {2026, 20}, [](RandomStream& r) { return binid::exp_sample(1.0, r); });
  const auto rate2 = draw(10'000, {2026, 21}, [](RandomStream& r) { return binid::exp_sample(2.0, r); });
  CHECK(binid::ks_two_sample(rate1, rate2).p_value < 1e-6);

  // max of one exponential is an exponential
  const auto m1 = draw(100'000, {2026, 30}, [](RandomStream& r) { return binid::sample_max_exp(1, r); });
  const auto e1 = draw(100'000, {2026, 31}, [](RandomStream& r) { return binid::exp_sample(1.0, r); });
  CHECK(binid::ks_two_sample(m1, e1).p_value > 0.01);

  CHECK(code_of([] {
          std::vector<double> tiny(99, 1.0);
          binid::ks_two_sample(tiny, tiny);
        }) == ErrorCode::TooFewSamples);
}

TEST_CASE("KS handles ties across samples") {
  // Equal blocks of tied values: the CDFs coincide after each block.
  std::vector<double> xs;
  std::vector<double> ys;
  for (int v = 0; v < 10; ++v) {
    for (int i = 0; i < 20; ++i) xs.push_back(v);
    for (int i = 0; i < 40; ++i) ys.push_back(v);
  }
  CHECK(binid::ks_two_sample(xs, ys).statistic == 0.0);

  // Shifted mass: sup gap is attained after processing the tied value 0.
  std::vector<double> a(200, 0.0);
  std::vector<double> b(100, 0.0);
  b.insert(b.end(), 100, 1.0);
  CHECK(binid::ks_two_sample(a, b).statistic == doctest::Approx(0.5));
}

TEST_CASE("Kolmogorov survival function") {
  CHECK(binid::kolmogorov_survival(0.0) == 1.0);
  CHECK(binid::kolmogorov_survival(1.36) == doctest::Approx(0.0494).epsilon(1e-2));
  CHECK(binid::kolmogorov_survival(1.63) == doctest::Approx(0.0098).epsilon(2e-2));
  CHECK(binid::kolmogorov_survival(10.0) < 1e-80);
}

TEST_CASE("tail probability estimates") {
  const auto e1 = binid::estimate_tail_prob(1, Rational(1), 2, 100'000, {7, 0});
  REQUIRE(e1.exact_reference);
  CHECK(*e1.exact_reference == Rational::parse("1/3"));
  CHECK(std::abs(e1.estimate - 1.0 / 3.0) <= 4.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / 1e5));
  CHECK(e1.std_error <= 0.5 / std::sqrt(1e5));
  CHECK(e1.estimate >= 0.0);
  CHECK(e1.estimate <= 1.0);

  const auto e2 = binid::estimate_tail_prob(2, Rational(1), 1, 100'000, {7, 1});
  CHECK(std::abs(e2.estimate - 0.75) <= 4.0 * std::sqrt(0.75 * 0.25 / 1e5));

  const auto e3 = binid::estimate_tail_prob(1, Rational(1000), 1, 100'000, {7, 2});
  CHECK(*e3.exact_reference == Rational::parse("1/1001"));
  CHECK(binid::z_score(e3) <= 4.0);

  const auto plain = binid::estimate_tail_prob(1, 1.0, 2, 10'000, {7, 0});
  CHECK_FALSE(plain.exact_reference.has_value());

  CHECK(code_of([] { binid::estimate_tail_prob(1, 1.0, 2, 9'999, {7, 0}); }) == ErrorCode::InsufficientSamples);
  CHECK(code_of([] { binid::estimate_tail_prob(1, 1.0, 0, 10'000, {7, 0}); }) == ErrorCode::NRequired);
}

TEST_CASE("empirical Laplace transform") {
  const auto e1 = binid::empirical_laplace(Rational(1), 1, 1'000'000, {8, 0});
  CHECK(*e1.exact_reference == Rational::parse("1/2"));
  CHECK(binid::z_score(e1) <= 4.0);
  CHECK(e1.std_error <= 0.5 / std::sqrt(1e6));

  const auto e2 = binid::empirical_laplace(Rational(1), 2, 1'000'000, {8, 1});
  CHECK(std::abs(e2.estimate - 1.0 / 3.0) <= 4.0 * e2.std_error);

  const auto big = binid::empirical_laplace(500.0, 1, 10'000, {8, 2});
  CHECK(big.estimate <= 1.0);
  CHECK(big.estimate >= 0.0);

  CHECK(code_of([] { binid::empirical_laplace(1.0, 1, 100, {8, 0}); }) == ErrorCode::InsufficientSamples);
  CHECK(code_of([] { binid::empirical_laplace(0.0, 1, 10'000, {8, 0}); }) == ErrorCode::NonPositiveS);
}

TEST_CASE("estimates are bitwise deterministic") {
  const auto a = binid::estimate_tail_prob(3, Rational::parse("3/2"), 4, 20'000, {99, 5});
  const auto b = binid::estimate_tail_prob(3, Rational::parse("3/2"), 4, 20'000, {99, 5});
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
  const auto c = binid::empirical_laplace(2.0, 3, 20'000, {99, 6});
  const auto d = binid::empirical_laplace(2.0, 3, 20'000, {99, 6});
  CHECK(c.estimate == d.estimate);
}
