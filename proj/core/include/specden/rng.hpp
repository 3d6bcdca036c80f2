#pragma once

#include <cstdint>

namespace specden {

/// SplitMix64 step; used to expand seeds and to derive per-image seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed for the `index`-th image of a batch: seed XOR splitmix64(index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// xoshiro256** 1.0 (Blackman & Vigna), state filled from four SplitMix64
/// outputs of the seed. Every variate below is a fixed function of the raw
/// 64-bit stream, so outputs are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;

  /// Uniform on (0, 1]: ((next() >> 11) + 1) * 2^-53.
  double uniform() noexcept;

  /// Uniform integer in [0, n) by modulo with rejection.
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Standard normal via Box-Muller. Each pair draws u1 then u2 and yields
  /// sqrt(-2 ln u1) cos(2 pi u2) first and the sin companion on the next call.
  double normal() noexcept;

  /// Poisson(lambda). lambda < 10 uses Knuth's product of uniforms;
  /// otherwise Hormann's PTRS transformed rejection.
  std::uint64_t poisson(double lambda) noexcept;

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace specden
