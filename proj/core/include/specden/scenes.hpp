#pragma once

#include <cstdint>
#include <vector>

#include "specden/image.hpp"

namespace specden {

/// Procedural stand-in for natural photographs: a dead-leaves occlusion
/// model (opaque disks with power-law radii, drawn back to front) over a
/// smooth illumination ramp, softened by a small Gaussian blur. Dead-leaves
/// images share the ~1/f^2 power spectrum of natural scenes.
struct SceneParams {
  int width = 128;
  int height = 128;
  int channels = 1;
  int disks = 400;
  double min_radius = 2.0;
  double max_radius = 48.0;
  double blur_sigma = 0.8;
};

Image synth_scene(const SceneParams& params, std::uint64_t seed);

/// `count` scenes seeded derive_seed(seed, i).
std::vector<Image> synth_scenes(const SceneParams& params, std::uint64_t seed, int count);

}  // namespace specden
