#pragma once

#include <cmath>
#include <cstdint>

#include "galikit/types.hpp"

namespace galikit {

/// SplitMix64: counter-based deterministic generator. The i-th output is a
/// fixed bit-mix of seed + i * golden_gamma, so a seed fully determines the
/// stream and independent streams come from distinct seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Standard normal via Box-Muller (cosine branch). Every call consumes
  /// exactly two uniform draws; nothing is cached, so the stream position
  /// is a pure function of the call count.
  double next_gaussian() {
    const double u1 =
        static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Vec3 gaussian_vec3() {
    return {next_gaussian(), next_gaussian(), next_gaussian()};
  }

  Vec3 uniform_vec3(double lo, double hi) {
    return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace galikit
