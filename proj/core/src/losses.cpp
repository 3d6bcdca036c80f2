#include "specden/losses.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "specden/csv.hpp"
#include "specden/error.hpp"
#include "specden/spectrum.hpp"

namespace specden {

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;

std::vector<double> gaussian_taps(int size, double sigma) {
  std::vector<double> taps(size);
  const int r = size / 2;
  double sum = 0;
  for (int i = 0; i < size; ++i) {
    taps[i] = std::exp(-((i - r) * (i - r)) / (2 * sigma * sigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Separable "valid" filtering: output is (w-n+1) x (h-n+1).
std::vector<double> filter_valid(std::span<const double> src, int w, int h,
                                 const std::vector<double>& taps) {
  const int n = static_cast<int>(taps.size());
  const int ow = w - n + 1;
  const int oh = h - n + 1;
  std::vector<double> rows(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0;
      for (int t = 0; t < n; ++t) acc += taps[t] * src[static_cast<std::size_t>(y) * w + x + t];
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0;
      for (int t = 0; t < n; ++t) acc += taps[t] * rows[static_cast<std::size_t>(y + t) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

double ssim_plane(std::span<const double> a, std::span<const double> b, int w, int h) {
  static const std::vector<double> taps = gaussian_taps(kSsimWindow, kSsimSigma);
  std::vector<double> aa(a.size()), bb(a.size()), ab(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const auto mu_a = filter_valid(a, w, h, taps);
  const auto mu_b = filter_valid(b, w, h, taps);
  const auto e_aa = filter_valid(aa, w, h, taps);
  const auto e_bb = filter_valid(bb, w, h, taps);
  const auto e_ab = filter_valid(ab, w, h, taps);
  double sum = 0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i];
    const double mb = mu_b[i];
    const double va = e_aa[i] - ma * ma;
    const double vb = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    sum += ((2 * ma * mb + kSsimC1) * (2 * cov + kSsimC2)) /
           ((ma * ma + mb * mb + kSsimC1) * (va + vb + kSsimC2));
  }
  return sum / static_cast<double>(mu_a.size());
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonFinite, std::string("objective part '") + name + "' is not finite");
  }
}

}  // namespace

double ssim(const Image& a, const Image& b) {
  require_same_shape(a, b, "ssim");
  if (a.width() < kSsimWindow || a.height() < kSsimWindow) {
    throw Error(ErrorCode::kInvalidArgument,
                "ssim needs images of at least 11x11, got " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()));
  }
  double total = 0;
  for (int c = 0; c < a.channels(); ++c) total += ssim_plane(a.plane(c), b.plane(c), a.width(), a.height());
  return total / a.channels();
}

double freq_recon_loss(const Image& a, const Image& b) {
  require_same_shape(a, b, "freq_recon_loss");
  double total = 0;
  for (int c = 0; c < a.channels(); ++c) {
    const SpectrumMap fa = dft2(a.channel(c));
    const SpectrumMap fb = dft2(b.channel(c));
    double sum = 0;
    for (std::size_t i = 0; i < fa.coeffs().size(); ++i) sum += std::abs(fa.coeffs()[i] - fb.coeffs()[i]);
    total += std::log1p(sum / static_cast<double>(a.plane_size()));
  }
  return total / a.channels();
}

double tv_loss(const Image& img, Reduction reduction) {
  const int w = img.width();
  const int h = img.height();
  double sum = 0;
  for (int c = 0; c < img.channels(); ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double v = img.at(x, y, c);
        if (x + 1 < w) sum += std::abs(img.at(x + 1, y, c) - v);
        if (y + 1 < h) sum += std::abs(img.at(x, y + 1, c) - v);
      }
    }
  }
  return reduction == Reduction::kMean ? sum / static_cast<double>(img.plane_size()) : sum;
}

double cycle_l1(const Image& a, const Image& b, Reduction reduction) {
  require_same_shape(a, b, "cycle_l1");
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a.data()[i] - b.data()[i]);
  return reduction == Reduction::kMean ? sum / static_cast<double>(a.size()) : sum;
}

double background_loss(const Image& a, const Image& b, GuidedFilterParams params) {
  require_same_shape(a, b, "background_loss");
  return cycle_l1(guided_filter(a, a, params), guided_filter(b, b, params));
}

double recon_loss(const Image& a, const Image& b) { return freq_recon_loss(a, b) + -ssim(a, b); }

double lsgan_terms(std::span<const double> d_real, std::span<const double> d_fake,
                   LsganTargets targets) {
  if (d_real.empty() || d_fake.empty()) {
    throw Error(ErrorCode::kEmptyInput, "lsgan_terms needs at least one score per side");
  }
  double real = 0;
  for (double s : d_real) real += (s - targets.real_target) * (s - targets.real_target);
  double fake = 0;
  for (double s : d_fake) fake += (s - targets.fake_target) * (s - targets.fake_target);
  return real / static_cast<double>(d_real.size()) + fake / static_cast<double>(d_fake.size());
}

double perceptual_distance(const FeatureExtractor& phi, const Image& a, const Image& b) {
  if (!phi) throw Error(ErrorCode::kInvalidArgument, "no feature extractor registered");
  const auto fa = phi(a);
  const auto fb = phi(b);
  if (fa.size() != fb.size()) throw Error(ErrorCode::kShapeMismatch, "feature vectors differ in length");
  double sum = 0;
  for (std::size_t i = 0; i < fa.size(); ++i) sum += (fa[i] - fb[i]) * (fa[i] - fb[i]);
  return std::sqrt(sum);
}

double objective_total(const ObjectiveParts& p, const LossWeights& w) {
  // Neumaier-compensated sum in a fixed order, so the total is the correctly
  // rounded sum of the weighted terms for these magnitudes.
  const double terms[] = {p.adv_clean, p.adv_texture, p.adv_spectral, p.cc,
                          p.vgg ? w.vgg * *p.vgg : 0.0, w.bg * p.bg, w.tv * p.tv,
                          w.recon * p.recon};
  double sum = 0.0;
  double comp = 0.0;
  for (double t : terms) {
    const double next = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - next) + t : (t - next) + sum;
    sum = next;
  }
  return sum + comp;
}

ObjectiveBreakdown full_objective(const ObjectiveParts& parts, const LossWeights& w) {
  require_finite(parts.adv_clean, "adv_clean");
  require_finite(parts.adv_texture, "adv_texture");
  require_finite(parts.adv_spectral, "adv_spectral");
  require_finite(parts.cc, "cc");
  if (parts.vgg) require_finite(*parts.vgg, "vgg");
  require_finite(parts.bg, "bg");
  require_finite(parts.tv, "tv");
  require_finite(parts.recon, "recon");
  for (double v : {w.vgg, w.bg, w.tv, w.recon}) {
    if (!(v >= 0) || !std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "loss weights must be finite and >= 0");
  }
  return {parts, w, objective_total(parts, w)};
}

void write_objective_header(std::ostream& out) {
  out << "adv_clean,adv_texture,adv_spectral,cc,vgg,bg,tv,recon,total\n";
}

void write_objective_row(std::ostream& out, const ObjectiveBreakdown& b) {
  const auto& p = b.parts;
  out << csv::format_double(p.adv_clean) << ',' << csv::format_double(p.adv_texture) << ','
      << csv::format_double(p.adv_spectral) << ',' << csv::format_double(p.cc) << ','
      << (p.vgg ? csv::format_double(*p.vgg) : std::string()) << ',' << csv::format_double(p.bg)
      << ',' << csv::format_double(p.tv) << ',' << csv::format_double(p.recon) << ','
      << csv::format_double(b.total) << '\n';
}

}  // namespace specden
