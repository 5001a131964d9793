#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "percolate/rng.hpp"

namespace percolate {

// X(a, b) = sum_{i=a}^{b} X_i with X_i ~ Geom((N - i) / N) on {1, 2, ...}:
// the number of coupon draws made while holding between a and b distinct
// coupons out of N.
struct GeomSumSpec {
  std::uint64_t coupons = 0;  // N
  std::uint64_t first = 0;    // a
  std::uint64_t last = 0;     // b

  // Throws std::invalid_argument unless 0 <= a <= b < N.
  void validate() const;
};

enum class SampleMode {
  // Inverse-transform sample of each geometric term.
  kGeometricSum,
  // Literal coupon drawing with replacement.
  kCouponDraws,
};

struct TailEstimate {
  double p_hat = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double ci_halfwidth = 0.0;  // 95% normal approximation
};

// N * (H_{N-a} - H_{N-b-1}) by direct summation of N / (N - i).
double expected_partial_collect(const GeomSumSpec& spec);

// Geometric waiting time on {1, 2, ...} with success probability p in (0, 1].
template <UniformSource R>
std::uint64_t sample_geometric(R& rng, double p) {
  if (p >= 1.0) return 1;
  const double u = rng.uniform_open01();
  const double k = std::ceil(std::log(u) / std::log1p(-p));
  return k < 1.0 ? 1 : static_cast<std::uint64_t>(k);
}

namespace detail {

// Coupon-draw simulation, reusing a stamp buffer across trials.
class CouponDrawer {
 public:
  template <UniformSource R>
  std::uint64_t run(const GeomSumSpec& spec, R& rng, std::uint64_t cap) {
    if (stamp_.size() < spec.coupons) stamp_.assign(spec.coupons, 0);
    if (++generation_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      generation_ = 1;
    }
    // Coupons 0..a-1 are held at the start.
    for (std::uint64_t c = 0; c < spec.first; ++c) stamp_[c] = generation_;
    std::uint64_t held = spec.first;
    std::uint64_t draws = 0;
    while (held <= spec.last && draws <= cap) {
      ++draws;
      const std::uint64_t c = rng.uniform_below(spec.coupons);
      if (stamp_[c] != generation_) {
        stamp_[c] = generation_;
        ++held;
      }
    }
    return draws;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t generation_ = 0;
};

template <UniformSource R>
std::uint64_t geometric_sum(const GeomSumSpec& spec, R& rng,
                            std::uint64_t cap) {
  const double n = static_cast<double>(spec.coupons);
  std::uint64_t total = 0;
  for (std::uint64_t i = spec.first; i <= spec.last && total <= cap; ++i) {
    total += sample_geometric(rng, static_cast<double>(spec.coupons - i) / n);
  }
  return total;
}

}  // namespace detail

// One draw of X(a, b).
template <UniformSource R>
std::uint64_t simulate_partial_collect(const GeomSumSpec& spec, R& rng,
                                       SampleMode mode) {
  spec.validate();
  constexpr auto kNoCap = ~std::uint64_t{0};
  if (mode == SampleMode::kGeometricSum) {
    return detail::geometric_sum(spec, rng, kNoCap);
  }
  detail::CouponDrawer drawer;
  return drawer.run(spec, rng, kNoCap);
}

// exp(-k^0.99)
double lemma1_bound(double k);

TailEstimate make_tail_estimate(std::uint64_t hits, std::uint64_t trials);

// Monte Carlo estimate of P[X(N - k, N - 2) <= s]. The event needs at least
// k - 1 draws, so for s < k - 1 the estimate is exactly zero.
template <UniformSource R>
TailEstimate lemma1_tail_estimate(std::uint64_t coupons, std::uint64_t k,
                                  std::uint64_t s, std::uint64_t trials,
                                  R& rng,
                                  SampleMode mode = SampleMode::kGeometricSum) {
  if (k < 2 || k >= coupons) {
    throw std::invalid_argument("need 2 <= k < N, got k = " +
                                std::to_string(k) + ", N = " +
                                std::to_string(coupons));
  }
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (s + 1 < k) return make_tail_estimate(0, trials);

  const GeomSumSpec spec{coupons, coupons - k, coupons - 2};
  detail::CouponDrawer drawer;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    // Sampling stops once the running total passes s.
    const std::uint64_t x = mode == SampleMode::kGeometricSum
                                ? detail::geometric_sum(spec, rng, s)
                                : drawer.run(spec, rng, s);
    if (x <= s) ++hits;
  }
  return make_tail_estimate(hits, trials);
}

}  // namespace percolate
