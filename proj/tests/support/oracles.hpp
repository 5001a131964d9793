#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the code under test except for the plain data types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace percolate::testing {

// Partition stored as explicit vertex sets; every operation is a scan.
class SetPartition {
 public:
  explicit SetPartition(std::uint32_t n) : owner_(n + 1) {
    for (std::uint32_t v = 1; v <= n; ++v) {
      owner_[v] = v - 1;
      sets_.push_back({v});
    }
  }

  bool unite(std::uint32_t u, std::uint32_t v) {
    const std::size_t a = owner_[u];
    const std::size_t b = owner_[v];
    if (a == b) return false;
    for (const auto x : sets_[b]) {
      sets_[a].insert(x);
      owner_[x] = a;
    }
    sets_[b].clear();
    return true;
  }

  std::uint32_t size_of(std::uint32_t v) const {
    return static_cast<std::uint32_t>(sets_[owner_[v]].size());
  }
  bool same(std::uint32_t u, std::uint32_t v) const { return owner_[u] == owner_[v]; }

  std::uint32_t largest() const {
    std::size_t best = 0;
    for (const auto& s : sets_) best = std::max(best, s.size());
    return static_cast<std::uint32_t>(best);
  }
  std::uint32_t count() const {
    return static_cast<std::uint32_t>(
        std::count_if(sets_.begin(), sets_.end(), [](const auto& s) { return !s.empty(); }));
  }
  std::uint32_t min_of(std::uint32_t v) const { return *sets_[owner_[v]].begin(); }

 private:
  std::vector<std::size_t> owner_;
  std::vector<std::set<std::uint32_t>> sets_;
};

// Feeds a fixed list of values to uniform_below; fails loudly when a draw
// exceeds its bound or the script runs dry.
class ScriptedSource {
 public:
  explicit ScriptedSource(std::vector<std::uint64_t> values,
                          std::vector<double> reals = {})
      : values_(values.begin(), values.end()), reals_(reals.begin(), reals.end()) {}

  std::uint64_t uniform_below(std::uint64_t bound) {
    if (values_.empty()) throw std::logic_error("scripted source exhausted");
    const std::uint64_t v = values_.front();
    values_.pop_front();
    if (v >= bound) throw std::logic_error("scripted value out of bound");
    return v;
  }
  double uniform_open01() {
    if (reals_.empty()) throw std::logic_error("scripted reals exhausted");
    const double v = reals_.front();
    reals_.pop_front();
    return v;
  }
  std::size_t remaining() const { return values_.size(); }

 private:
  std::deque<std::uint64_t> values_;
  std::deque<double> reals_;
};

// Largest-component fraction of G(n, cn) as n grows: the positive root of
// rho = 1 - exp(-2 c rho), by fixed-point iteration from rho = 1.
inline double giant_fraction(double c) {
  double rho = 1.0;
  for (int i = 0; i < 100000; ++i) {
    const double next = 1.0 - std::exp(-2.0 * c * rho);
    if (std::fabs(next - rho) < 1e-15) return next;
    rho = next;
  }
  return rho;
}

// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / a.size() -
                              static_cast<double>(j) / b.size()));
  }
  return d;
}

// Critical value of the two-sample KS statistic at level 0.01.
inline double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(0.01 / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

// Exact mean of X(a, b) summed in long double from the largest index down,
// a different order and precision from the library's summation.
inline double partial_collect_mean(std::uint64_t coupons, std::uint64_t a, std::uint64_t b) {
  long double sum = 0.0L;
  for (std::uint64_t j = coupons - b; j <= coupons - a; ++j) sum += 1.0L / j;
  return static_cast<double>(coupons * sum);
}

}  // namespace percolate::testing
