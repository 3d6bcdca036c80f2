#include "specden/scenes.hpp"

#include <cmath>

#include "specden/error.hpp"
#include "specden/filters.hpp"
#include "specden/rng.hpp"

namespace specden {

Image synth_scene(const SceneParams& params, std::uint64_t seed) {
  if (params.disks < 0 || !(params.min_radius > 0) || params.max_radius < params.min_radius) {
    throw Error(ErrorCode::kInvalidArgument, "invalid scene parameters");
  }
  Rng rng(seed);
  const int w = params.width;
  const int h = params.height;
  Image img(w, h, params.channels);

  // Illumination ramp in a random direction.
  const double gx = rng.uniform() - 0.5;
  const double gy = rng.uniform() - 0.5;
  std::vector<double> base(params.channels);
  for (double& b : base) b = 0.3 + 0.4 * rng.uniform();
  for (int c = 0; c < params.channels; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        img.at(x, y, c) = base[c] + 0.3 * (gx * (x - w / 2.0) / w + gy * (y - h / 2.0) / h);
      }
    }
  }

  // Radii follow p(r) ~ r^-3 on [min, max] by inverse-CDF sampling.
  const double a = 1.0 / (params.min_radius * params.min_radius);
  const double b = 1.0 / (params.max_radius * params.max_radius);
  std::vector<double> color(params.channels);
  for (int n = 0; n < params.disks; ++n) {
    const double u = rng.uniform();
    const double radius = 1.0 / std::sqrt(a - u * (a - b));
    const double cx = rng.uniform() * (w + 2 * radius) - radius;
    const double cy = rng.uniform() * (h + 2 * radius) - radius;
    const double shade = 0.05 + 0.9 * rng.uniform();
    for (int c = 0; c < params.channels; ++c) {
      color[c] = std::clamp(shade + (params.channels > 1 ? 0.3 * (rng.uniform() - 0.5) : 0.0), 0.0, 1.0);
    }
    const double tilt = 0.15 * (rng.uniform() - 0.5);
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - radius)));
    const int x1 = std::min(w - 1, static_cast<int>(std::ceil(cx + radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - radius)));
    const int y1 = std::min(h - 1, static_cast<int>(std::ceil(cy + radius)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double dx = x - cx;
        const double dy = y - cy;
        if (dx * dx + dy * dy > radius * radius) continue;
        for (int c = 0; c < params.channels; ++c) {
          img.at(x, y, c) = color[c] + tilt * dx / radius;
        }
      }
    }
  }

  if (params.blur_sigma > 0) {
    int size = 2 * static_cast<int>(std::ceil(3 * params.blur_sigma)) + 1;
    img = convolve2d(img, Kernel::gaussian(size, params.blur_sigma));
  }
  return clamp01(std::move(img));
}

std::vector<Image> synth_scenes(const SceneParams& params, std::uint64_t seed, int count) {
  std::vector<Image> out;
  out.reserve(std::max(count, 0));
  for (int i = 0; i < count; ++i) out.push_back(synth_scene(params, derive_seed(seed, i)));
  return out;
}

}  // namespace specden
