#include "percolate/geomsum.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"

namespace percolate {
namespace {

TEST(ExpectedPartialCollect, SmallCases) {
  EXPECT_DOUBLE_EQ(expected_partial_collect({2, 0, 1}), 3.0);
  EXPECT_DOUBLE_EQ(expected_partial_collect({4, 2, 2}), 2.0);
  for (std::uint64_t n : {2u, 5u, 1000u}) {
    EXPECT_DOUBLE_EQ(expected_partial_collect({n, 0, 0}), 1.0);
  }
}

TEST(ExpectedPartialCollect, MatchesHarmonicDifference) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 2 + rng.uniform_below(20000);
    const std::uint64_t a = rng.uniform_below(n);
    const std::uint64_t b = a + rng.uniform_below(n - a);
    const double want = testing::partial_collect_mean(n, a, b);
    EXPECT_NEAR(expected_partial_collect({n, a, b}), want, 1e-9 * want);
  }
}

TEST(GeomSumSpec, Validation) {
  EXPECT_THROW(GeomSumSpec({1, 0, 0}).validate(), std::invalid_argument);
  EXPECT_THROW(GeomSumSpec({5, 3, 2}).validate(), std::invalid_argument);
  EXPECT_THROW(GeomSumSpec({5, 0, 5}).validate(), std::invalid_argument);
  EXPECT_NO_THROW(GeomSumSpec({5, 0, 4}).validate());
  Rng rng(1);
  EXPECT_THROW(simulate_partial_collect({1, 0, 0}, rng, SampleMode::kCouponDraws),
               std::invalid_argument);
  EXPECT_THROW(expected_partial_collect({3, 2, 3}), std::invalid_argument);
}

TEST(SampleGeometric, SupportStartsAtOne) {
  testing::ScriptedSource src({}, {0.999999, 0.5, 0.25});
  EXPECT_EQ(sample_geometric(src, 0.5), 1u);
  EXPECT_EQ(sample_geometric(src, 0.5), 1u);
  EXPECT_EQ(sample_geometric(src, 0.5), 2u);
  EXPECT_EQ(sample_geometric(src, 1.0), 1u);
}

TEST(SimulatePartialCollect, TwoCouponMean) {
  for (auto mode : {SampleMode::kGeometricSum, SampleMode::kCouponDraws}) {
    Rng rng(2718);
    constexpr int kTrials = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < kTrials; ++i) {
      const auto x = static_cast<double>(simulate_partial_collect({2, 0, 1}, rng, mode));
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / kTrials;
    const double se = std::sqrt((sum_sq / kTrials - mean * mean) / kTrials);
    EXPECT_NEAR(mean, 3.0, 3.0 * se);
  }
}

TEST(SimulatePartialCollect, ModesAgreeInDistribution) {
  const std::vector<GeomSumSpec> specs{{2, 0, 1}, {10, 0, 9}, {50, 10, 40}, {200, 150, 198}};
  for (const auto& spec : specs) {
    Rng rng_a(31);
    Rng rng_b(32);
    std::vector<double> a;
    std::vector<double> b;
    constexpr int kTrials = 10000;
    for (int i = 0; i < kTrials; ++i) {
      a.push_back(static_cast<double>(simulate_partial_collect(spec, rng_a, SampleMode::kGeometricSum)));
      b.push_back(static_cast<double>(simulate_partial_collect(spec, rng_b, SampleMode::kCouponDraws)));
    }
    EXPECT_LT(testing::ks_statistic(a, b), testing::ks_critical_1pct(kTrials, kTrials))
        << "N=" << spec.coupons << " a=" << spec.first << " b=" << spec.last;
  }
}

TEST(Lemma1Bound, Values) {
  EXPECT_DOUBLE_EQ(lemma1_bound(1), std::exp(-1.0));
  EXPECT_DOUBLE_EQ(lemma1_bound(1e4), std::exp(-std::pow(10.0, 3.96)));
  double prev = lemma1_bound(1);
  for (double k = 2; k < 200; k += 1) {
    EXPECT_LT(lemma1_bound(k), prev);
    prev = lemma1_bound(k);
  }
  EXPECT_THROW(lemma1_bound(0.5), std::invalid_argument);
}

TEST(Lemma1Tail, ImpossibleEventIsExactlyZero) {
  Rng rng(4);
  const TailEstimate est = lemma1_tail_estimate(1000, 50, 48, 100, rng);
  EXPECT_EQ(est.p_hat, 0.0);
  EXPECT_EQ(est.trials, 100u);
  EXPECT_EQ(est.ci_halfwidth, 0.0);
}

TEST(Lemma1Tail, FarBelowTheMeanIsZero) {
  Rng rng(5);
  const std::uint64_t n = 10000;
  const std::uint64_t k = 1000;
  const auto s = static_cast<std::uint64_t>(std::floor(n * std::log(double(k)) / 4.0));
  const TailEstimate est = lemma1_tail_estimate(n, k, s, 10000, rng);
  EXPECT_EQ(est.p_hat, 0.0);
  EXPECT_LE(est.p_hat, lemma1_bound(double(k)) + est.ci_halfwidth);
}

TEST(Lemma1Tail, FarAboveTheMeanIsOne) {
  for (auto mode : {SampleMode::kGeometricSum, SampleMode::kCouponDraws}) {
    Rng rng(6);
    const std::uint64_t n = 1000;
    const std::uint64_t k = 100;
    const auto s = static_cast<std::uint64_t>(std::ceil(10.0 * n * std::log(double(k))));
    const TailEstimate est = lemma1_tail_estimate(n, k, s, 2000, rng, mode);
    EXPECT_NEAR(est.p_hat, 1.0, est.ci_halfwidth + 1e-12);
  }
}

TEST(Lemma1Tail, Preconditions) {
  Rng rng(7);
  EXPECT_THROW(lemma1_tail_estimate(100, 1, 10, 10, rng), std::invalid_argument);
  EXPECT_THROW(lemma1_tail_estimate(100, 100, 10, 10, rng), std::invalid_argument);
  EXPECT_THROW(lemma1_tail_estimate(100, 10, 10, 0, rng), std::invalid_argument);
}

// The tail estimate agrees with the exact P[Y <= 1], where Y counts the
// k fixed coupons missed by s uniform draws (inclusion-exclusion).
TEST(Lemma1Tail, MatchesExactCouponTail) {
  const std::uint64_t n = 200;
  const std::uint64_t k = 8;
  const std::uint64_t s = 300;
  auto binom = [](double nn, double kk) {
    return std::exp(std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1));
  };
  // P[Y = m] = C(k,m) sum_j (-1)^j C(k-m,j) (1 - (m+j)/N)^s
  auto p_missing = [&](std::uint64_t m) {
    double total = 0.0;
    for (std::uint64_t j = 0; j <= k - m; ++j) {
      const double sign = j % 2 ? -1.0 : 1.0;
      total += sign * binom(double(k - m), double(j)) *
               std::pow(1.0 - double(m + j) / double(n), double(s));
    }
    return binom(double(k), double(m)) * total;
  };
  const double exact = p_missing(0) + p_missing(1);
  Rng rng(9);
  const TailEstimate est = lemma1_tail_estimate(n, k, s, 40000, rng);
  EXPECT_NEAR(est.p_hat, exact, 4.0 * std::sqrt(exact * (1 - exact) / 40000.0));
}

}  // namespace
}  // namespace percolate
