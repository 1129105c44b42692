#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace rfs {

/// Counter-based pseudo-random generator.
///
/// The i-th output is a pure function of (seed, stream, i), so identical
/// (seed, stream) pairs replay identical sequences and replication r of a
/// Monte Carlo run can use stream = r under a single base seed.  Gaussian
/// variates come from Box-Muller on uniform doubles; there is no rejection
/// loop, so the draw count per variate is fixed.
class RngState {
 public:
  explicit RngState(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), counter_(0) {
    key_ = mix(mix(seed + kGolden) ^ (kGolden * (stream + 1)));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return mix(key_ + kGolden * ++counter_); }

  /// Uniform double in (0, 1].  The open lower end keeps log() finite.
  double next_uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Real standard normal N(0, 1).
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Standard complex Gaussian: E Z = 0, E|Z|^2 = 1, E Z^2 = 0.
  /// Real and imaginary parts are independent N(0, 1/2).
  std::complex<double> next_complex_gaussian() {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  // splitmix64 finalizer: a strong 64-bit bijective mix.
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_ = 0;
  std::uint64_t counter_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// `count` independent standard complex Gaussians (E|Z|^2 = 1, E Z^2 = 0).
inline std::vector<std::complex<double>> sample_standard_complex_gaussian(
    std::size_t count, RngState& rng) {
  std::vector<std::complex<double>> out(count);
  for (auto& z : out) z = rng.next_complex_gaussian();
  return out;
}

}  // namespace rfs
