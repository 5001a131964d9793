#include "percolate/geomsum.hpp"

namespace percolate {

void GeomSumSpec::validate() const {
  // A single-coupon universe is rejected outright.
  if (coupons < 2 || !(first <= last && last < coupons)) {
    throw std::invalid_argument(
        "need N >= 2 and 0 <= a <= b < N, got N = " + std::to_string(coupons) +
        ", a = " + std::to_string(first) + ", b = " + std::to_string(last));
  }
}

double expected_partial_collect(const GeomSumSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.coupons);
  // Smallest terms first.
  double sum = 0.0;
  for (std::uint64_t i = spec.first; i <= spec.last; ++i) {
    sum += n / static_cast<double>(spec.coupons - i);
  }
  return sum;
}

double lemma1_bound(double k) {
  if (k < 1.0) throw std::invalid_argument("lemma bound needs k >= 1");
  return std::exp(-std::pow(k, 0.99));
}

TailEstimate make_tail_estimate(std::uint64_t hits, std::uint64_t trials) {
  TailEstimate est;
  est.trials = trials;
  est.hits = hits;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  est.ci_halfwidth =
      1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                       static_cast<double>(trials));
  return est;
}

}  // namespace percolate
