#pragma once

#include <cmath>
#include <cstdint>

namespace fmn {

inline constexpr double kPi = 3.14159265358979323846;

/// splitmix64: tiny deterministic PRNG with identical output on every
/// platform. All randomness in the toolkit flows through this generator so
/// that a single seed reproduces a whole run byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [lo, hi] via rejection sampling (unbiased).
  int uniform_int(int lo, int hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return lo + static_cast<int>(v % range);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (deterministic, no cached spare).
  double normal() {
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  /// Derive an independent stream for a counter value (participant index
  /// etc.). Growing the counter never reshuffles earlier streams.
  static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    Rng mix(master ^ (0x9e3779b97f4a7c15ULL * (counter + 1)));
    return mix.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace fmn
