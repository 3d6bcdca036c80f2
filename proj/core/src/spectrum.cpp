#include "specden/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "specden/csv.hpp"
#include "specden/error.hpp"

namespace specden {

namespace {

// 1D transform of fixed length. Twiddles are tabulated from exact integer
// phases (j mod n) so large products never lose precision in the argument.
class Dft1d {
 public:
  explicit Dft1d(int n) : n_(n), twiddle_(n) {
    for (int j = 0; j < n; ++j) {
      const double phase = -2.0 * std::numbers::pi * j / n;
      twiddle_[j] = {std::cos(phase), std::sin(phase)};
    }
    pow2_ = (n & (n - 1)) == 0;
    if (pow2_) {
      bitrev_.resize(n);
      int bits = 0;
      while ((1 << bits) < n) ++bits;
      for (int i = 0; i < n; ++i) {
        int r = 0;
        for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
        bitrev_[i] = r;
      }
    } else {
      scratch_.resize(n);
    }
  }

  // In-place transform with kernel exp(sign * 2 pi i jk/n), sign = -1 forward.
  void run(std::span<Complex> x, bool inverse) {
    if (n_ == 1) return;
    if (pow2_) {
      radix2(x, inverse);
    } else {
      direct(x, inverse);
    }
  }

 private:
  Complex tw(std::size_t idx, bool inverse) const {
    const Complex t = twiddle_[idx];
    return inverse ? std::conj(t) : t;
  }

  void radix2(std::span<Complex> x, bool inverse) {
    for (int i = 0; i < n_; ++i) {
      if (i < bitrev_[i]) std::swap(x[i], x[bitrev_[i]]);
    }
    for (int len = 2; len <= n_; len <<= 1) {
      const int half = len / 2;
      const int stride = n_ / len;
      for (int start = 0; start < n_; start += len) {
        for (int j = 0; j < half; ++j) {
          const Complex t = tw(static_cast<std::size_t>(j) * stride, inverse) * x[start + j + half];
          const Complex u = x[start + j];
          x[start + j] = u + t;
          x[start + j + half] = u - t;
        }
      }
    }
  }

  void direct(std::span<Complex> x, bool inverse) {
    for (int k = 0; k < n_; ++k) {
      Complex acc = 0;
      std::size_t idx = 0;
      for (int j = 0; j < n_; ++j) {
        acc += x[j] * tw(idx, inverse);
        idx += k;
        if (idx >= static_cast<std::size_t>(n_)) idx -= n_;
      }
      scratch_[k] = acc;
    }
    std::copy(scratch_.begin(), scratch_.end(), x.begin());
  }

  int n_;
  bool pow2_ = false;
  std::vector<Complex> twiddle_;
  std::vector<int> bitrev_;
  std::vector<Complex> scratch_;
};

void transform2d(SpectrumMap& m, bool inverse) {
  const int w = m.width();
  const int h = m.height();
  auto data = m.coeffs();
  Dft1d rows(w);
  for (int l = 0; l < h; ++l) rows.run(data.subspan(static_cast<std::size_t>(l) * w, w), inverse);
  Dft1d cols(h);
  std::vector<Complex> column(h);
  for (int k = 0; k < w; ++k) {
    for (int l = 0; l < h; ++l) column[l] = m.at(k, l);
    cols.run(column, inverse);
    for (int l = 0; l < h; ++l) m.at(k, l) = column[l];
  }
}

void check_finite(std::span<const Complex> coeffs) {
  for (const Complex& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::kNonFinite, "spectrum contains a non-finite coefficient");
    }
  }
}

}  // namespace

SpectrumMap::SpectrumMap(int width, int height)
    : width_(width), height_(height),
      coeffs_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument, "spectrum dimensions must be positive");
  }
}

SpectrumMap::SpectrumMap(int width, int height, std::vector<Complex> coeffs)
    : width_(width), height_(height), coeffs_(std::move(coeffs)) {
  if (width < 1 || height < 1 ||
      coeffs_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::kInvalidArgument, "spectrum coefficient count does not match W*H");
  }
  check_finite(coeffs_);
}

SpectrumMap dft2(const Image& channel) {
  if (channel.channels() != 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "dft2 expects a 1-channel image, got " + std::to_string(channel.channels()));
  }
  SpectrumMap m(channel.width(), channel.height());
  auto src = channel.plane(0);
  auto dst = m.coeffs();
  std::copy(src.begin(), src.end(), dst.begin());
  transform2d(m, false);
  return m;
}

std::vector<SpectrumMap> dft2_channels(const Image& img) {
  std::vector<SpectrumMap> out;
  out.reserve(img.channels());
  for (int c = 0; c < img.channels(); ++c) out.push_back(dft2(img.channel(c)));
  return out;
}

InverseDft idft2(const SpectrumMap& spec) {
  SpectrumMap m = spec;
  transform2d(m, true);
  const double scale = 1.0 / (static_cast<double>(m.width()) * m.height());
  InverseDft result{Image(m.width(), m.height(), 1), 0.0};
  auto out = result.image.plane(0);
  auto coeffs = m.coeffs();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = coeffs[i].real() * scale;
    result.max_imag_residue = std::max(result.max_imag_residue, std::abs(coeffs[i].imag() * scale));
  }
  return result;
}

double centered_radius(int k, int l, int width, int height) noexcept {
  const double dx = centered_offset(k, width);
  const double dy = centered_offset(l, height);
  return std::sqrt(dx * dx + dy * dy);
}

int radius_bin(int k, int l, int width, int height) noexcept {
  return static_cast<int>(std::lround(centered_radius(k, l, width, height)));
}

int max_radius_bin(int width, int height) noexcept { return std::min(width, height) / 2; }

SpectralVector azimuthal_integral(const SpectrumMap& spec) {
  const int w = spec.width();
  const int h = spec.height();
  const int bins = max_radius_bin(w, h) + 1;
  std::vector<double> sum(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (int l = 0; l < h; ++l) {
    for (int k = 0; k < w; ++k) {
      const int r = radius_bin(k, l, w, h);
      if (r >= bins) continue;
      sum[r] += std::abs(spec.at(k, l));
      ++count[r];
    }
  }
  SpectralVector v;
  v.values.resize(bins);
  for (int r = 0; r < bins; ++r) v.values[r] = count[r] ? sum[r] / count[r] : 0.0;
  return v;
}

SpectralVector azimuthal_integral(const Image& img, ChannelMode mode) {
  if (img.channels() == 1 || mode == ChannelMode::kLuma) {
    return azimuthal_integral(dft2(to_grayscale(img)));
  }
  SpectralVector acc;
  for (int c = 0; c < img.channels(); ++c) {
    SpectralVector v = azimuthal_integral(dft2(img.channel(c)));
    if (acc.values.empty()) acc.values.assign(v.size(), 0.0);
    for (std::size_t r = 0; r < v.size(); ++r) acc.values[r] += v[r];
  }
  for (double& x : acc.values) x /= img.channels();
  return acc;
}

SpectralVector highpass_vector(const SpectralVector& v, int r_tau) {
  if (r_tau < 0 || static_cast<std::size_t>(r_tau) >= v.size()) {
    throw Error(ErrorCode::kOutOfBounds,
                "r_tau " + std::to_string(r_tau) + " outside [0, " +
                    std::to_string(v.size()) + ")");
  }
  SpectralVector out = v;
  std::fill(out.values.begin(), out.values.begin() + r_tau + 1, 0.0);
  return out;
}

int default_r_tau(int height) {
  if (height < 1) throw Error(ErrorCode::kInvalidArgument, "height must be >= 1");
  return static_cast<int>(std::floor(height / (2.0 * std::numbers::sqrt2)));
}

SpectrumStats spectrum_stats(std::span<const Image> images, ChannelMode mode) {
  if (images.empty()) throw Error(ErrorCode::kEmptyInput, "spectrum_stats needs at least one image");
  const int w = images.front().width();
  const int h = images.front().height();
  std::vector<SpectralVector> profiles;
  profiles.reserve(images.size());
  for (const Image& img : images) {
    if (img.width() != w || img.height() != h) {
      throw Error(ErrorCode::kShapeMismatch, "spectrum_stats: images differ in size");
    }
    profiles.push_back(azimuthal_integral(img, mode));
  }
  const std::size_t bins = profiles.front().size();
  const double n = static_cast<double>(profiles.size());
  SpectrumStats stats;
  stats.count = profiles.size();
  stats.mean.values.assign(bins, 0.0);
  stats.variance.values.assign(bins, 0.0);
  for (const auto& p : profiles) {
    for (std::size_t r = 0; r < bins; ++r) stats.mean.values[r] += p[r];
  }
  for (double& m : stats.mean.values) m /= n;
  for (const auto& p : profiles) {
    for (std::size_t r = 0; r < bins; ++r) {
      const double d = p[r] - stats.mean[r];
      stats.variance.values[r] += d * d;
    }
  }
  for (double& v : stats.variance.values) v /= n;
  return stats;
}

double lfd(const Image& a, const Image& b) {
  require_same_shape(a, b, "lfd");
  double total = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    const SpectrumMap fa = dft2(a.channel(c));
    const SpectrumMap fb = dft2(b.channel(c));
    double sum = 0.0;
    for (std::size_t i = 0; i < fa.coeffs().size(); ++i) sum += std::norm(fa.coeffs()[i] - fb.coeffs()[i]);
    total += std::log1p(sum / static_cast<double>(a.plane_size()));
  }
  return total / a.channels();
}

void write_csv(std::ostream& out, const SpectralVector& v) {
  out << "r,value\n";
  for (std::size_t r = 0; r < v.size(); ++r) out << r << ',' << csv::format_double(v[r]) << '\n';
}

void write_csv(std::ostream& out, const SpectrumStats& stats) {
  out << "r,mean,variance\n";
  for (std::size_t r = 0; r < stats.mean.size(); ++r) {
    out << r << ',' << csv::format_double(stats.mean[r]) << ','
        << csv::format_double(stats.variance[r]) << '\n';
  }
}

SpectrumStats read_stats_csv(std::istream& in) {
  std::string line;
  if (!csv::read_line(in, line) || line != "r,mean,variance") {
    throw Error(ErrorCode::kParse, "stats CSV must start with 'r,mean,variance'");
  }
  SpectrumStats stats;
  while (csv::read_line(in, line)) {
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (fields.size() != 3) throw Error(ErrorCode::kParse, "stats CSV row needs 3 fields: " + line);
    if (csv::parse_double(fields[0]) != static_cast<double>(stats.mean.size())) {
      throw Error(ErrorCode::kParse, "stats CSV radii must ascend from 0");
    }
    stats.mean.values.push_back(csv::parse_double(fields[1]));
    stats.variance.values.push_back(csv::parse_double(fields[2]));
  }
  if (stats.mean.values.empty()) throw Error(ErrorCode::kParse, "stats CSV has no rows");
  return stats;
}

}  // namespace specden
