#include "percolate/beta.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace percolate {

namespace {

[[noreturn]] void bad(std::string_view text, const char* why) {
  throw std::invalid_argument("invalid beta '" + std::string(text) +
                              "': " + why);
}

std::uint64_t parse_uint(std::string_view digits, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    bad(text, "not a number");
  }
  return v;
}

}  // namespace

Beta::Beta(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::invalid_argument("beta denominator is zero");
  const std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0 || num_ > den_) {
    throw std::invalid_argument("beta must lie in (0, 1], got " +
                                std::to_string(num) + "/" +
                                std::to_string(den));
  }
}

Beta Beta::ratio(std::uint64_t num, std::uint64_t den) { return {num, den}; }

Beta Beta::from_double(double value) {
  if (!(value > 0.0) || !(value <= 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1]");
  }
  constexpr std::uint64_t kScale = 1'000'000'000;
  const auto num = static_cast<std::uint64_t>(std::llround(value * kScale));
  return {num, kScale};
}

Beta Beta::parse(std::string_view text) {
  if (text.empty()) bad(text, "empty");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return {parse_uint(text.substr(0, slash), text),
            parse_uint(text.substr(slash + 1), text)};
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(
        exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size()) {
      bad(text, "bad exponent");
    }
  }

  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (const char ch : mantissa) {
    if (ch == '.') {
      if (seen_point) bad(text, "two decimal points");
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_point) ++frac_digits;
    } else {
      bad(text, "unexpected character");
    }
  }
  if (digits.empty()) bad(text, "no digits");
  while (digits.size() > 1 && digits.front() == '0') digits.erase(0, 1);

  long scale = frac_digits - exponent;
  while (scale < 0) {
    digits.push_back('0');
    ++scale;
  }
  if (digits.size() > 18 || scale > 18) bad(text, "too many digits");
  std::uint64_t den = 1;
  for (long i = 0; i < scale; ++i) den *= 10;
  return {parse_uint(digits, text), den};
}

std::uint32_t Beta::restricted_size(std::uint32_t n) const noexcept {
  const auto prod = static_cast<unsigned __int128>(n) * num_;
  return static_cast<std::uint32_t>(prod / den_);
}

std::string Beta::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value());
  return buf;
}

}  // namespace percolate
