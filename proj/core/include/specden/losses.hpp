#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "specden/filters.hpp"
#include "specden/image.hpp"

namespace specden {

/// Per-sample mean (default) or the literal raw sum for the L1/TV losses.
enum class Reduction { kMean, kSum };

/// Mean local SSIM: 11x11 Gaussian window (sigma 1.5) over every fully
/// contained position, K1 = 0.01, K2 = 0.03, dynamic range 1, averaged over
/// channels. Both sides must be at least 11 pixels.
double ssim(const Image& a, const Image& b);

/// log(1 + (1/WH) sum |F_a(k,l) - F_b(k,l)|), averaged over channels.
double freq_recon_loss(const Image& a, const Image& b);

/// Anisotropic TV: sum of |forward horizontal| + |forward vertical|
/// differences over all channels; kMean divides by W*H. A missing direction
/// (width or height 1) contributes nothing.
double tv_loss(const Image& img, Reduction reduction = Reduction::kMean);

/// L1 distance; kMean is the mean absolute difference over all samples.
double cycle_l1(const Image& a, const Image& b, Reduction reduction = Reduction::kMean);

/// Mean absolute difference between the self-guided filterings of a and b.
double background_loss(const Image& a, const Image& b, GuidedFilterParams params = {});

/// freq_recon_loss(a,b) - ssim(a,b).
double recon_loss(const Image& a, const Image& b);

struct LsganTargets {
  double real_target = 1.0;
  double fake_target = 0.0;

  /// (0, 1): the targets as the adversarial terms are printed in the source
  /// formulation, which swaps the usual discriminator labels.
  static constexpr LsganTargets literal() { return {0.0, 1.0}; }
};

/// mean((d_real - real_target)^2) + mean((d_fake - fake_target)^2).
double lsgan_terms(std::span<const double> d_real, std::span<const double> d_fake,
                   LsganTargets targets = {});

/// Maps an image to a feature vector for the perceptual term.
using FeatureExtractor = std::function<std::vector<double>(const Image&)>;

/// ||phi(a) - phi(b)||_2 for a registered feature extractor.
double perceptual_distance(const FeatureExtractor& phi, const Image& a, const Image& b);

struct LossWeights {
  double vgg = 2.0;
  double bg = 2.0;
  double tv = 0.2;
  double recon = 0.2;
};

/// Term values feeding the weighted objective. `vgg` is empty when no
/// feature extractor is registered.
struct ObjectiveParts {
  double adv_clean = 0;
  double adv_texture = 0;
  double adv_spectral = 0;
  double cc = 0;
  std::optional<double> vgg;
  double bg = 0;
  double tv = 0;
  double recon = 0;
};

struct ObjectiveBreakdown {
  ObjectiveParts parts;
  LossWeights weights;
  double total = 0;
};

/// total = adv_clean + adv_texture + adv_spectral + cc + w.vgg*vgg + w.bg*bg
///       + w.tv*tv + w.recon*recon with a compensated sum. Throws kNonFinite.
ObjectiveBreakdown full_objective(const ObjectiveParts& parts, const LossWeights& w = {});

/// The same sum; full_objective(...).total equals this bit for bit.
double objective_total(const ObjectiveParts& parts, const LossWeights& w);

/// Header `adv_clean,adv_texture,adv_spectral,cc,vgg,bg,tv,recon,total`; an
/// absent vgg term is written as an empty field.
void write_objective_header(std::ostream& out);
void write_objective_row(std::ostream& out, const ObjectiveBreakdown& b);

}  // namespace specden
