#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace percolate {

// Fraction of the vertex set that forms the restricted set, held as an exact
// rational so that floor(beta * n) never suffers from binary rounding
// (0.29 * 100 must give 29, not 28).
class Beta {
 public:
  // Accepts decimal literals ("0.5", "1", ".25", "1e-1") and ratios ("1/3").
  static Beta parse(std::string_view text);
  static Beta ratio(std::uint64_t num, std::uint64_t den);
  // Rounds to nine decimal places before converting.
  static Beta from_double(double value);

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }
  double value() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // floor(beta * n)
  std::uint32_t restricted_size(std::uint32_t n) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Beta& x, const Beta& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

 private:
  Beta(std::uint64_t num, std::uint64_t den);

  std::uint64_t num_;
  std::uint64_t den_;
};

}  // namespace percolate
