#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace rfferr {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Deterministic random stream with explicit, implementation-independent
/// samplers. All distribution draws are built from raw 64-bit engine output,
/// so a fixed seed reproduces the same values on any platform/toolchain.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(mix(seed)) {}

  /// Mixes a base seed with a path of tags (e.g. {phase, s, trial}) into a
  /// new seed. Used to make parallel Monte Carlo loops schedule-independent.
  static std::uint64_t derive_seed(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
    std::uint64_t state = mix(seed);
    for (std::uint64_t p : path) state = mix(state ^ mix(p + 0x9e3779b97f4a7c15ull));
    return state;
  }

  /// Independent substream at the derived seed.
  static RngStream derive(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> path) {
    return RngStream(derive_seed(seed, path));
  }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as a log() argument.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Unbiased integer in [0, n); rejection sampling on the top bits.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t threshold = (0ull - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  /// Standard normal via Box-Muller (two uniforms per draw, no cached state).
  double normal() {
    double u1 = uniform_open();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  /// Cauchy(0, scale) by inverse CDF.
  double cauchy(double scale) {
    return scale * std::tan(M_PI * (uniform() - 0.5));
  }

  /// Laplace(0, scale): sign-flipped exponential.
  double laplace(double scale) {
    double e = -scale * std::log(uniform_open());
    return uniform() < 0.5 ? -e : e;
  }

 private:
  // splitmix64 finalizer; spreads low-entropy seeds/tags over 64 bits.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 eng_;
};

}  // namespace rfferr
