#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "specden/image.hpp"
#include "specden/spectrum.hpp"

namespace specden {

/// Multiplicative gain per rounded centered radius bin r = 0..R. Coefficients
/// beyond R (the corners of the spectrum) use gain[R].
struct RadialGain {
  std::vector<double> gains;

  static RadialGain ones(std::size_t length) { return {std::vector<double>(length, 1.0)}; }
  std::size_t size() const noexcept { return gains.size(); }
  friend bool operator==(const RadialGain&, const RadialGain&) = default;
};

struct FitConfig {
  double learning_rate = 1.0;  ///< Initial step; halved whenever a step would raise the loss.
  int iterations = 100;
  std::uint64_t seed = 0;      ///< Carried for provenance; the fit is seed-free.
  double weight_tv = 0.2;
  double weight_spec = 1.0;
  double fd_step = 1e-4;       ///< Central finite-difference step per gain.
  int r_tau = -1;              ///< Spectral band is r > r_tau; -1 means default_r_tau(H).
};

struct FitResult {
  RadialGain gain;
  std::vector<double> loss_history;  ///< Loss at the initial gains, then after each accepted step.
  double final_learning_rate = 0;
};

/// Gain bin of coefficient (k,l): min(round(centered radius), R).
int gain_bin(int k, int l, int width, int height) noexcept;

/// Per channel: dft2, scale each coefficient by its bin's gain, idft2 real
/// part. No clamping.
Image apply_gains_unclamped(const Image& img, const RadialGain& g);

/// apply_gains_unclamped followed by clamping to [0,1].
Image apply_gains(const Image& img, const RadialGain& g);

/// Supervised per-bin least-squares gain:
///   sum Re(F_clean conj(F_noisy)) / sum |F_noisy|^2 over the bin and all
/// channels, clamped to [0,1]; bins without noisy energy get 0.
RadialGain wiener_oracle(const Image& noisy, const Image& clean);

/// Loss minimized by fit_unsupervised, exposed for tests:
///   mean over images of
///     weight_spec * mean_{r > r_tau} (g_r * AI_noisy(r) - clean_mean(r))^2
///   + weight_tv * tv_loss(apply_gains_unclamped(noisy, g)).
/// AI is taken on the luma of the gain-filtered image, which for
/// non-negative gains equals g_r times the luma AI of the input.
double unsupervised_loss(std::span<const Image> noisy_set, const SpectrumStats& clean_stats,
                         const RadialGain& g, const FitConfig& cfg);

/// Projected gradient descent on unsupervised_loss from all-ones gains, with
/// central finite-difference gradients and step halving on any increase, so
/// the recorded history never rises. Deterministic.
FitResult fit_unsupervised(std::span<const Image> noisy_set, const SpectrumStats& clean_stats,
                           const FitConfig& cfg = {});

/// `r,gain` CSV.
void write_csv(std::ostream& out, const RadialGain& g);
RadialGain read_gain_csv(std::istream& in);

}  // namespace specden
