#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "specden/image.hpp"

namespace specden {

using Complex = std::complex<double>;

/// Un-centered 2D Fourier coefficients F(k,l), k = 0..W-1 along x,
/// l = 0..H-1 along y, stored row-major (index l*W + k).
class SpectrumMap {
 public:
  SpectrumMap() = default;
  SpectrumMap(int width, int height);
  SpectrumMap(int width, int height, std::vector<Complex> coeffs);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  Complex& at(int k, int l) { return coeffs_[static_cast<std::size_t>(l) * width_ + k]; }
  Complex at(int k, int l) const { return coeffs_[static_cast<std::size_t>(l) * width_ + k]; }

  std::span<Complex> coeffs() noexcept { return coeffs_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Complex> coeffs_;
};

/// Azimuthally integrated magnitude profile AI(r), r = 0..R with
/// R = floor(min(W,H)/2).
struct SpectralVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t r) const { return values[r]; }
  friend bool operator==(const SpectralVector&, const SpectralVector&) = default;
};

/// Per-bin statistics of AI(r) over an image set. `variance` is the
/// population variance.
struct SpectrumStats {
  SpectralVector mean;
  SpectralVector variance;
  std::size_t count = 0;
};

/// How multi-channel images are reduced before azimuthal analysis.
enum class ChannelMode {
  kLuma,        ///< BT.601 luma, then one spectrum.
  kPerChannel,  ///< AI per channel, averaged.
};

/// Unnormalized forward DFT:
///   F(k,l) = sum_w sum_h f(w,h) exp(-2 pi i k w / W) exp(-2 pi i l h / H).
/// Power-of-two axes use a radix-2 FFT, other lengths a direct table-driven
/// DFT; both agree with the double sum to ~1e-12 at desk sizes.
SpectrumMap dft2(const Image& channel);

/// One spectrum per channel.
std::vector<SpectrumMap> dft2_channels(const Image& img);

struct InverseDft {
  Image image;                   ///< Real part, unclamped.
  double max_imag_residue = 0;  ///< max |Im f(w,h)|; > 1e-6 flags a non-Hermitian input.
};

/// Inverse of dft2 including the 1/(WH) factor.
InverseDft idft2(const SpectrumMap& spec);

/// Signed frequency index of k after moving the zero frequency to
/// floor(n/2): k - n for k >= n - floor(n/2), k otherwise.
inline int centered_offset(int k, int n) noexcept {
  return k >= n - n / 2 ? k - n : k;
}

/// Euclidean distance of coefficient (k,l) from the centered zero frequency.
double centered_radius(int k, int l, int width, int height) noexcept;

/// round(centered_radius), half away from zero.
int radius_bin(int k, int l, int width, int height) noexcept;

/// R = floor(min(W,H)/2), the last fully sampled radius bin.
int max_radius_bin(int width, int height) noexcept;

/// AI(r) = mean |F| over the coefficients whose rounded centered radius is r,
/// for r = 0..R; coefficients beyond R are discarded.
SpectralVector azimuthal_integral(const SpectrumMap& spec);

/// Spectral profile of an image; multi-channel input is reduced per `mode`.
SpectralVector azimuthal_integral(const Image& img, ChannelMode mode = ChannelMode::kLuma);

/// Keeps bins r > r_tau and zeroes the rest. Requires 0 <= r_tau < size.
SpectralVector highpass_vector(const SpectralVector& v, int r_tau);

/// floor(H / (2*sqrt(2))).
int default_r_tau(int height);

/// Per-bin mean and population variance of AI(r) across `images`. The
/// profile integrates |F| rather than |F|^2. Throws kEmptyInput or
/// kShapeMismatch.
SpectrumStats spectrum_stats(std::span<const Image> images,
                             ChannelMode mode = ChannelMode::kLuma);

/// Log frequency distance: log(1 + (1/WH) sum |F_a - F_b|^2), per channel,
/// averaged over channels.
double lfd(const Image& a, const Image& b);

/// `r,value` CSV, radii ascending.
void write_csv(std::ostream& out, const SpectralVector& v);
/// `r,mean,variance` CSV, radii ascending.
void write_csv(std::ostream& out, const SpectrumStats& stats);
/// Parses the `r,mean,variance` layout written above. `count` is set to 0
/// because the CSV does not carry it.
SpectrumStats read_stats_csv(std::istream& in);

}  // namespace specden
