#pragma once

#include <bit>
#include <concepts>
#include <cstdint>
#include <random>

namespace percolate {

// Anything the process steps and samplers can draw from. Tests substitute a
// scripted source to force particular draws.
template <typename R>
concept UniformSource = requires(R& r, std::uint64_t bound) {
  { r.uniform_below(bound) } -> std::convertible_to<std::uint64_t>;
  { r.uniform_open01() } -> std::convertible_to<double>;
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seeded stream used by every run. std::mt19937_64 output is fixed by the
// standard; the bounded and real conversions below are ours, so draws are
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). Lemire's multiply-shift with rejection.
  std::uint64_t uniform_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform in the open interval (0, 1).
  double uniform_open01() {
    for (;;) {
      const std::uint64_t bits = next() >> 11;
      if (bits != 0) return static_cast<double>(bits) * 0x1.0p-53;
    }
  }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace percolate
