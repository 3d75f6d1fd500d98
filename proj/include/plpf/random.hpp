#pragma once

#include <cstdint>
#include <random>

namespace plpf {

/// Child seed for trial `index` of a run seeded with `base_seed`.
///
/// seed = mix(mix(base_seed) + (index + 1) * 0x9E3779B97F4A7C15), where mix is
/// the SplitMix64 finalizer. The mapping depends only on (base_seed, index),
/// so trials can run in any order or on any worker and see the same stream.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

/// Single-owner random stream. Every variate is produced by code in this
/// library on top of mt19937_64, so draws are identical across standard
/// library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream for_trial(std::uint64_t base_seed, std::uint64_t index) {
    return RandomStream(derive_seed(base_seed, index));
  }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double exponential();
  double normal();
  /// Gamma(shape, 1) by Marsaglia-Tsang squeeze/acceptance; shape > 0.
  double gamma(double shape);
  /// Poisson(mean): product method below 12, PTRS transformed rejection above.
  std::uint64_t poisson(double mean);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace plpf
