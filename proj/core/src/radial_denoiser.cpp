#include "specden/radial_denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "specden/csv.hpp"
#include "specden/error.hpp"
#include "specden/losses.hpp"

namespace specden {

namespace {

constexpr int kMaxHalvings = 40;

void check_length(const Image& img, const RadialGain& g) {
  const std::size_t want = static_cast<std::size_t>(max_radius_bin(img.width(), img.height())) + 1;
  if (g.size() != want) {
    throw Error(ErrorCode::kShapeMismatch, "gain length " + std::to_string(g.size()) +
                                               " does not match image bin count " + std::to_string(want));
  }
}

// Per-image precomputation: the luma profile of the input, and for each
// channel and gain bin the spatial image carried by that bin alone. The
// filtered output is then sum_r g_r * basis[r] (linear, unclamped).
struct Prepared {
  std::vector<double> luma_ai;
  int width = 0;
  int height = 0;
  int channels = 0;
  std::size_t bins = 0;
  // basis[(c * bins + r) * plane + i]
  std::vector<double> basis;

  std::size_t plane() const { return static_cast<std::size_t>(width) * height; }
  const double* at(int c, std::size_t r) const { return basis.data() + (c * bins + r) * plane(); }
};

Prepared prepare(const Image& img) {
  Prepared p;
  p.width = img.width();
  p.height = img.height();
  p.channels = img.channels();
  p.bins = static_cast<std::size_t>(max_radius_bin(p.width, p.height)) + 1;
  p.luma_ai = azimuthal_integral(img, ChannelMode::kLuma).values;
  p.basis.assign(p.channels * p.bins * p.plane(), 0.0);
  for (int c = 0; c < p.channels; ++c) {
    const SpectrumMap f = dft2(img.channel(c));
    for (std::size_t r = 0; r < p.bins; ++r) {
      SpectrumMap masked(p.width, p.height);
      for (int l = 0; l < p.height; ++l) {
        for (int k = 0; k < p.width; ++k) {
          if (static_cast<std::size_t>(gain_bin(k, l, p.width, p.height)) == r) masked.at(k, l) = f.at(k, l);
        }
      }
      const Image part = idft2(masked).image;
      std::copy(part.data().begin(), part.data().end(),
                p.basis.begin() + static_cast<std::ptrdiff_t>((c * p.bins + r) * p.plane()));
    }
  }
  return p;
}

std::vector<double> synthesize(const Prepared& p, const std::vector<double>& g) {
  std::vector<double> out(p.channels * p.plane(), 0.0);
  for (int c = 0; c < p.channels; ++c) {
    double* dst = out.data() + c * p.plane();
    for (std::size_t r = 0; r < p.bins; ++r) {
      const double* b = p.at(c, r);
      const double gr = g[r];
      for (std::size_t i = 0; i < p.plane(); ++i) dst[i] += gr * b[i];
    }
  }
  return out;
}

// tv_loss (mean reduction) of out + delta * direction, without materializing it.
double tv_shifted(const Prepared& p, const std::vector<double>& out, std::size_t r, double delta) {
  const int w = p.width;
  const int h = p.height;
  double sum = 0;
  for (int c = 0; c < p.channels; ++c) {
    const double* o = out.data() + c * p.plane();
    const double* b = delta != 0.0 ? p.at(c, r) : nullptr;
    auto val = [&](std::size_t i) { return b ? o[i] + delta * b[i] : o[i]; };
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const double v = val(i);
        if (x + 1 < w) sum += std::abs(val(i + 1) - v);
        if (y + 1 < h) sum += std::abs(val(i + w) - v);
      }
    }
  }
  return sum / static_cast<double>(p.plane());
}

double spec_term(const Prepared& p, const std::vector<double>& g, const SpectrumStats& stats, int r_tau) {
  const std::size_t first = static_cast<std::size_t>(r_tau) + 1;
  if (first >= p.bins) return 0.0;
  double sum = 0;
  for (std::size_t r = first; r < p.bins; ++r) {
    const double d = g[r] * p.luma_ai[r] - stats.mean[r];
    sum += d * d;
  }
  return sum / static_cast<double>(p.bins - first);
}

class Objective {
 public:
  Objective(std::span<const Image> noisy_set, const SpectrumStats& stats, const FitConfig& cfg)
      : stats_(stats), cfg_(cfg) {
    if (noisy_set.empty()) throw Error(ErrorCode::kEmptyInput, "fit needs at least one noisy image");
    const Image& first = noisy_set.front();
    for (const Image& img : noisy_set) {
      if (img.width() != first.width() || img.height() != first.height()) {
        throw Error(ErrorCode::kShapeMismatch, "noisy images differ in size");
      }
    }
    bins_ = static_cast<std::size_t>(max_radius_bin(first.width(), first.height())) + 1;
    if (stats.mean.size() != bins_) {
      throw Error(ErrorCode::kShapeMismatch, "clean stats have " + std::to_string(stats.mean.size()) +
                                                 " bins, images need " + std::to_string(bins_));
    }
    r_tau_ = cfg.r_tau >= 0 ? cfg.r_tau : default_r_tau(first.height());
    if (static_cast<std::size_t>(r_tau_) >= bins_) {
      throw Error(ErrorCode::kOutOfBounds, "r_tau outside the spectral vector");
    }
    for (const Image& img : noisy_set) prepared_.push_back(prepare(img));
  }

  std::size_t bins() const { return bins_; }

  double value(const std::vector<double>& g) const {
    double total = 0;
    for (const Prepared& p : prepared_) total += image_loss(p, g, synthesize(p, g));
    return total / static_cast<double>(prepared_.size());
  }

  std::vector<double> fd_gradient(const std::vector<double>& g) const {
    const double h = cfg_.fd_step;
    std::vector<double> grad(bins_, 0.0);
    for (const Prepared& p : prepared_) {
      const std::vector<double> out = synthesize(p, g);
      std::vector<double> probe = g;
      for (std::size_t r = 0; r < bins_; ++r) {
        probe[r] = g[r] + h;
        const double up = cfg_.weight_spec * spec_term(p, probe, stats_, r_tau_) +
                          cfg_.weight_tv * tv_shifted(p, out, r, h);
        probe[r] = g[r] - h;
        const double down = cfg_.weight_spec * spec_term(p, probe, stats_, r_tau_) +
                            cfg_.weight_tv * tv_shifted(p, out, r, -h);
        probe[r] = g[r];
        grad[r] += (up - down) / (2 * h);
      }
    }
    for (double& v : grad) v /= static_cast<double>(prepared_.size());
    return grad;
  }

 private:
  double image_loss(const Prepared& p, const std::vector<double>& g, const std::vector<double>& out) const {
    double loss = 0;
    if (cfg_.weight_spec != 0) loss += cfg_.weight_spec * spec_term(p, g, stats_, r_tau_);
    if (cfg_.weight_tv != 0) loss += cfg_.weight_tv * tv_shifted(p, out, 0, 0.0);
    return loss;
  }

  const SpectrumStats& stats_;
  FitConfig cfg_;
  std::size_t bins_ = 0;
  int r_tau_ = 0;
  std::vector<Prepared> prepared_;
};

void check_config(const FitConfig& cfg) {
  if (!(cfg.learning_rate > 0)) throw Error(ErrorCode::kInvalidArgument, "learning rate must be > 0");
  if (cfg.iterations < 0) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 0");
  if (!(cfg.weight_tv >= 0) || !(cfg.weight_spec >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "loss weights must be >= 0");
  }
  if (!(cfg.fd_step > 0)) throw Error(ErrorCode::kInvalidArgument, "finite-difference step must be > 0");
}

}  // namespace

int gain_bin(int k, int l, int width, int height) noexcept {
  return std::min(radius_bin(k, l, width, height), max_radius_bin(width, height));
}

Image apply_gains_unclamped(const Image& img, const RadialGain& g) {
  check_length(img, g);
  std::vector<Image> planes;
  for (int c = 0; c < img.channels(); ++c) {
    SpectrumMap f = dft2(img.channel(c));
    for (int l = 0; l < f.height(); ++l) {
      for (int k = 0; k < f.width(); ++k) f.at(k, l) *= g.gains[gain_bin(k, l, f.width(), f.height())];
    }
    planes.push_back(idft2(f).image);
  }
  return merge_channels(planes);
}

Image apply_gains(const Image& img, const RadialGain& g) { return clamp01(apply_gains_unclamped(img, g)); }

RadialGain wiener_oracle(const Image& noisy, const Image& clean) {
  require_same_shape(noisy, clean, "wiener_oracle");
  const int w = noisy.width();
  const int h = noisy.height();
  const std::size_t bins = static_cast<std::size_t>(max_radius_bin(w, h)) + 1;
  std::vector<double> cross(bins, 0.0);
  std::vector<double> energy(bins, 0.0);
  for (int c = 0; c < noisy.channels(); ++c) {
    const SpectrumMap fn = dft2(noisy.channel(c));
    const SpectrumMap fc = dft2(clean.channel(c));
    for (int l = 0; l < h; ++l) {
      for (int k = 0; k < w; ++k) {
        const int r = gain_bin(k, l, w, h);
        cross[r] += (fc.at(k, l) * std::conj(fn.at(k, l))).real();
        energy[r] += std::norm(fn.at(k, l));
      }
    }
  }
  RadialGain g{std::vector<double>(bins, 0.0)};
  for (std::size_t r = 0; r < bins; ++r) {
    if (energy[r] > 0) g.gains[r] = std::clamp(cross[r] / energy[r], 0.0, 1.0);
  }
  return g;
}

double unsupervised_loss(std::span<const Image> noisy_set, const SpectrumStats& clean_stats,
                         const RadialGain& g, const FitConfig& cfg) {
  check_config(cfg);
  const Objective objective(noisy_set, clean_stats, cfg);
  if (g.size() != objective.bins()) throw Error(ErrorCode::kShapeMismatch, "gain length mismatch");
  return objective.value(g.gains);
}

FitResult fit_unsupervised(std::span<const Image> noisy_set, const SpectrumStats& clean_stats,
                           const FitConfig& cfg) {
  check_config(cfg);
  const Objective objective(noisy_set, clean_stats, cfg);
  FitResult result{RadialGain::ones(objective.bins()), {}, cfg.learning_rate};
  double loss = objective.value(result.gain.gains);
  result.loss_history.push_back(loss);
  double lr = cfg.learning_rate;
  for (int it = 0; it < cfg.iterations; ++it) {
    const std::vector<double> grad = objective.fd_gradient(result.gain.gains);
    bool accepted = false;
    for (int attempt = 0; attempt <= kMaxHalvings; ++attempt) {
      std::vector<double> next = result.gain.gains;
      for (std::size_t r = 0; r < next.size(); ++r) next[r] = std::clamp(next[r] - lr * grad[r], 0.0, 1.0);
      const double next_loss = objective.value(next);
      if (next_loss <= loss) {
        result.gain.gains = std::move(next);
        loss = next_loss;
        accepted = true;
        break;
      }
      lr *= 0.5;
    }
    if (!accepted) break;
    result.loss_history.push_back(loss);
  }
  result.final_learning_rate = lr;
  return result;
}

void write_csv(std::ostream& out, const RadialGain& g) {
  out << "r,gain\n";
  for (std::size_t r = 0; r < g.size(); ++r) out << r << ',' << csv::format_double(g.gains[r]) << '\n';
}

RadialGain read_gain_csv(std::istream& in) {
  std::string line;
  if (!csv::read_line(in, line) || line != "r,gain") {
    throw Error(ErrorCode::kParse, "gain CSV must start with 'r,gain'");
  }
  RadialGain g;
  while (csv::read_line(in, line)) {
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != 2) throw Error(ErrorCode::kParse, "gain CSV row needs 2 fields: " + line);
    if (csv::parse_double(fields[0]) != static_cast<double>(g.size())) {
      throw Error(ErrorCode::kParse, "gain CSV radii must ascend from 0");
    }
    const double v = csv::parse_double(fields[1]);
    if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::kParse, "gain outside [0,1]: " + line);
    g.gains.push_back(v);
  }
  if (g.gains.empty()) throw Error(ErrorCode::kParse, "gain CSV has no rows");
  return g;
}

}  // namespace specden
