#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "specden/image.hpp"

namespace specden {

enum class NoiseKind { kNone, kAwgn, kPoisson, kStructured };

/// Parameters of one noise synthesizer. Only the fields of `kind` are read.
/// Amplitudes (sigma, target_std) are on the 0-255 scale.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::kNone;
  double sigma = 25.0;
  double peak = 255.0;
  int kernel_size = 21;
  double kernel_sigma = 3.0;
  double target_std = 25.0;
  std::uint64_t seed = 0;
  bool clamp = true;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

/// Grammar: `KIND[:KEY=VALUE[,KEY=VALUE]...]` with
///   none
///   awgn:sigma=S
///   poisson:peak=P
///   structured:std=T[,ksize=K][,ksigma=S]
/// and the optional keys `seed=N` and `clamp=on|off` on every kind.
/// Missing keys keep their defaults.
NoiseSpec parse_noise_spec(std::string_view text);

/// Canonical form; keys equal to their default are omitted, so
/// parse_noise_spec(to_string(s)) == s.
std::string to_string(const NoiseSpec& spec);

/// clamp(img + N(0, (sigma/255)^2)) per sample, noise drawn in storage order.
Image add_awgn(const Image& img, double sigma, std::uint64_t seed, bool clamp = true);

/// Poisson(img * peak) / peak per sample.
Image add_poisson(const Image& img, double peak, std::uint64_t seed, bool clamp = true);

struct StructuredNoise {
  int kernel_size = 21;
  double kernel_sigma = 3.0;
  double target_std = 25.0;
};

/// White Gaussian field per channel, smoothed by a Gaussian kernel with
/// reflected borders, rescaled to empirical std target_std/255, then added.
Image add_structured(const Image& img, const StructuredNoise& params, std::uint64_t seed,
                     bool clamp = true);

/// Dispatches on spec.kind using spec.seed.
Image apply_noise(const Image& img, const NoiseSpec& spec);

/// Same as apply_noise with seed derive_seed(spec.seed, index), for the
/// `index`-th image of a batch.
Image apply_noise(const Image& img, const NoiseSpec& spec, std::uint64_t index);

}  // namespace specden
