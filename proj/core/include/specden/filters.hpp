#pragma once

#include <vector>

#include "specden/image.hpp"

namespace specden {

/// Square correlation kernel with odd side length.
class Kernel {
 public:
  Kernel(int size, std::vector<double> weights);

  int size() const noexcept { return size_; }
  int radius() const noexcept { return size_ / 2; }
  double at(int dx, int dy) const { return weights_[(dy + radius()) * size_ + dx + radius()]; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  /// Single 1 at the center.
  static Kernel identity(int size);
  /// exp(-(dx^2+dy^2) / (2 sigma^2)), normalized to sum 1.
  static Kernel gaussian(int size, double sigma);

 private:
  int size_;
  std::vector<double> weights_;
};

/// Mirror index into [0, n) without repeating the edge sample
/// (-1 -> 1, n -> n-2); folds repeatedly when |i| exceeds n.
int reflect_index(int i, int n) noexcept;

/// out(x,y) = sum k(dx,dy) * in(x+dx, y+dy), reflected borders, per channel.
Image convolve2d(const Image& img, const Kernel& k);

/// Mean over the (2*radius+1)^2 window with reflected borders, per channel.
Image box_mean(const Image& img, int radius);

struct GuidedFilterParams {
  int radius = 8;
  double eps = 0.01;
};

/// He et al. guided filter. Per window a = cov(I,p)/(var(I)+eps),
/// b = mean(p) - a*mean(I); output = mean(a)*I + mean(b). A 1-channel guide
/// steers every input channel; otherwise guide channel c steers input
/// channel c.
Image guided_filter(const Image& guide, const Image& input, GuidedFilterParams params = {});

/// Ideal low-pass: zero every coefficient whose centered radius exceeds
/// `cutoff`, invert, clamp to [0,1]. Per channel.
Image lpf_denoise(const Image& img, double cutoff);

/// Cutoff from `candidates` with the highest mean PSNR of lpf_denoise(noisy)
/// against clean. Ties keep the earlier candidate.
double tune_lpf_cutoff(std::span<const Image> noisy, std::span<const Image> clean,
                       std::span<const double> candidates);

}  // namespace specden
