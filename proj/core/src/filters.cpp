#include "specden/filters.hpp"

#include <cmath>
#include <string>

#include "specden/error.hpp"
#include "specden/metrics.hpp"
#include "specden/spectrum.hpp"

namespace specden {

Kernel::Kernel(int size, std::vector<double> weights) : size_(size), weights_(std::move(weights)) {
  if (size < 1 || size % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "kernel size must be odd, got " + std::to_string(size));
  }
  if (weights_.size() != static_cast<std::size_t>(size) * size) {
    throw Error(ErrorCode::kInvalidArgument, "kernel weight count must be size*size");
  }
  for (double w : weights_) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kNonFinite, "kernel weight is not finite");
  }
}

Kernel Kernel::identity(int size) {
  std::vector<double> w(static_cast<std::size_t>(std::max(size, 0)) * std::max(size, 0), 0.0);
  if (size > 0 && size % 2 == 1) w[w.size() / 2] = 1.0;
  return Kernel(size, std::move(w));
}

Kernel Kernel::gaussian(int size, double sigma) {
  if (!(sigma > 0)) throw Error(ErrorCode::kInvalidArgument, "gaussian sigma must be positive");
  if (size < 1 || size % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "kernel size must be odd, got " + std::to_string(size));
  }
  const int r = size / 2;
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(size) * size);
  double sum = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      w.push_back(std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma)));
      sum += w.back();
    }
  }
  for (double& v : w) v /= sum;
  return Kernel(size, std::move(w));
}

int reflect_index(int i, int n) noexcept {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

Image convolve2d(const Image& img, const Kernel& k) {
  const int w = img.width();
  const int h = img.height();
  const int r = k.radius();
  Image out(w, h, img.channels());
  std::vector<int> xs(w + 2 * r);
  std::vector<int> ys(h + 2 * r);
  for (int i = 0; i < w + 2 * r; ++i) xs[i] = reflect_index(i - r, w);
  for (int j = 0; j < h + 2 * r; ++j) ys[j] = reflect_index(j - r, h);
  for (int c = 0; c < img.channels(); ++c) {
    auto src = img.plane(c);
    auto dst = out.plane(c);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int dy = -r; dy <= r; ++dy) {
          const std::size_t row = static_cast<std::size_t>(ys[y + dy + r]) * w;
          for (int dx = -r; dx <= r; ++dx) acc += k.at(dx, dy) * src[row + xs[x + dx + r]];
        }
        dst[static_cast<std::size_t>(y) * w + x] = acc;
      }
    }
  }
  return out;
}

namespace {

// Sliding window sum along one line of n samples spaced by stride.
void window_sums(const double* src, double* dst, int n, std::size_t stride, int radius) {
  double acc = 0.0;
  for (int d = -radius; d <= radius; ++d) acc += src[reflect_index(d, n) * stride];
  dst[0] = acc;
  for (int i = 1; i < n; ++i) {
    acc += src[reflect_index(i + radius, n) * stride] - src[reflect_index(i - radius - 1, n) * stride];
    dst[i * stride] = acc;
  }
}

}  // namespace

Image box_mean(const Image& img, int radius) {
  if (radius < 0) throw Error(ErrorCode::kInvalidArgument, "box radius must be >= 0");
  const int w = img.width();
  const int h = img.height();
  const double norm = 1.0 / ((2.0 * radius + 1) * (2.0 * radius + 1));
  Image tmp(w, h, img.channels());
  Image out(w, h, img.channels());
  // Separable: horizontal then vertical window sums.
  for (int c = 0; c < img.channels(); ++c) {
    const double* src = img.plane(c).data();
    double* mid = tmp.plane(c).data();
    double* dst = out.plane(c).data();
    for (int y = 0; y < h; ++y) {
      const std::size_t row = static_cast<std::size_t>(y) * w;
      window_sums(src + row, mid + row, w, 1, radius);
    }
    for (int x = 0; x < w; ++x) window_sums(mid + x, dst + x, h, static_cast<std::size_t>(w), radius);
    for (std::size_t i = 0; i < out.plane(c).size(); ++i) dst[i] *= norm;
  }
  return out;
}

namespace {

Image guided_plane(const Image& guide, const Image& p, const GuidedFilterParams& params) {
  const int r = params.radius;
  const Image mean_i = box_mean(guide, r);
  const Image mean_p = box_mean(p, r);
  Image ii = guide;
  Image ip = guide;
  for (std::size_t n = 0; n < ii.size(); ++n) {
    ii.data()[n] = guide.data()[n] * guide.data()[n];
    ip.data()[n] = guide.data()[n] * p.data()[n];
  }
  const Image corr_ii = box_mean(ii, r);
  const Image corr_ip = box_mean(ip, r);
  Image a(guide.width(), guide.height(), 1);
  Image b(guide.width(), guide.height(), 1);
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double mi = mean_i.data()[n];
    const double mp = mean_p.data()[n];
    const double var = corr_ii.data()[n] - mi * mi;
    const double cov = corr_ip.data()[n] - mi * mp;
    a.data()[n] = cov / (var + params.eps);
    b.data()[n] = mp - a.data()[n] * mi;
  }
  const Image mean_a = box_mean(a, r);
  const Image mean_b = box_mean(b, r);
  Image q(guide.width(), guide.height(), 1);
  for (std::size_t n = 0; n < q.size(); ++n) {
    q.data()[n] = mean_a.data()[n] * guide.data()[n] + mean_b.data()[n];
  }
  return q;
}

}  // namespace

Image guided_filter(const Image& guide, const Image& input, GuidedFilterParams params) {
  if (guide.width() != input.width() || guide.height() != input.height() ||
      (guide.channels() != 1 && guide.channels() != input.channels())) {
    throw Error(ErrorCode::kShapeMismatch, "guided_filter: guide and input shapes differ");
  }
  if (params.radius < 1) throw Error(ErrorCode::kInvalidArgument, "guided_filter radius must be >= 1");
  if (!(params.eps > 0)) throw Error(ErrorCode::kInvalidArgument, "guided_filter eps must be > 0");
  std::vector<Image> planes;
  for (int c = 0; c < input.channels(); ++c) {
    const Image g = guide.channel(guide.channels() == 1 ? 0 : c);
    planes.push_back(guided_plane(g, input.channel(c), params));
  }
  return merge_channels(planes);
}

Image lpf_denoise(const Image& img, double cutoff) {
  if (!(cutoff >= 0)) throw Error(ErrorCode::kInvalidArgument, "lpf cutoff must be >= 0");
  std::vector<Image> planes;
  for (int c = 0; c < img.channels(); ++c) {
    SpectrumMap f = dft2(img.channel(c));
    for (int l = 0; l < f.height(); ++l) {
      for (int k = 0; k < f.width(); ++k) {
        if (centered_radius(k, l, f.width(), f.height()) > cutoff) f.at(k, l) = 0.0;
      }
    }
    planes.push_back(clamp01(idft2(f).image));
  }
  return merge_channels(planes);
}

double tune_lpf_cutoff(std::span<const Image> noisy, std::span<const Image> clean,
                       std::span<const double> candidates) {
  if (noisy.empty() || candidates.empty() || noisy.size() != clean.size()) {
    throw Error(ErrorCode::kEmptyInput, "tune_lpf_cutoff needs matching non-empty sets and candidates");
  }
  double best_cutoff = candidates.front();
  double best_psnr = -1e300;
  for (double cutoff : candidates) {
    double sum = 0.0;
    for (std::size_t i = 0; i < noisy.size(); ++i) sum += psnr(lpf_denoise(noisy[i], cutoff), clean[i]);
    const double mean = sum / noisy.size();
    if (mean > best_psnr) {
      best_psnr = mean;
      best_cutoff = cutoff;
    }
  }
  return best_cutoff;
}

}  // namespace specden
