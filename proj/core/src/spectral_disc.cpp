#include "specden/spectral_disc.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "specden/csv.hpp"
#include "specden/error.hpp"

namespace specden {

namespace {

void check_sets(const LinearDisc& d, std::span<const SpectralVector> clean,
                std::span<const SpectralVector> noisy) {
  if (clean.empty() || noisy.empty()) {
    throw Error(ErrorCode::kEmptyInput, "spectral discriminator needs non-empty clean and noisy sets");
  }
  for (auto set : {clean, noisy}) {
    for (const SpectralVector& v : set) {
      if (v.size() != d.weights.size()) {
        throw Error(ErrorCode::kShapeMismatch,
                    "spectral vector length " + std::to_string(v.size()) +
                        " does not match discriminator length " + std::to_string(d.weights.size()));
      }
    }
  }
}

}  // namespace

double forward(const LinearDisc& d, const SpectralVector& v) {
  if (v.size() != d.weights.size()) {
    throw Error(ErrorCode::kShapeMismatch, "forward: vector length does not match weights");
  }
  double s = d.bias;
  for (std::size_t i = 0; i < v.size(); ++i) s += d.weights[i] * v[i];
  return s;
}

double disc_objective(const LinearDisc& d, std::span<const SpectralVector> clean,
                      std::span<const SpectralVector> noisy, LsganTargets targets) {
  check_sets(d, clean, noisy);
  std::vector<double> real_scores;
  std::vector<double> fake_scores;
  for (const auto& v : clean) real_scores.push_back(forward(d, v));
  for (const auto& v : noisy) fake_scores.push_back(forward(d, v));
  return lsgan_terms(real_scores, fake_scores, targets);
}

LinearDisc disc_gradient(const LinearDisc& d, std::span<const SpectralVector> clean,
                         std::span<const SpectralVector> noisy, LsganTargets targets) {
  check_sets(d, clean, noisy);
  LinearDisc g = LinearDisc::zeros(d.weights.size());
  auto accumulate = [&](std::span<const SpectralVector> set, double target) {
    const double scale = 2.0 / static_cast<double>(set.size());
    for (const auto& v : set) {
      const double residual = scale * (forward(d, v) - target);
      for (std::size_t i = 0; i < v.size(); ++i) g.weights[i] += residual * v[i];
      g.bias += residual;
    }
  };
  accumulate(clean, targets.real_target);
  accumulate(noisy, targets.fake_target);
  return g;
}

double lipschitz_bound(std::span<const SpectralVector> clean, std::span<const SpectralVector> noisy) {
  if (clean.empty() || noisy.empty()) throw Error(ErrorCode::kEmptyInput, "lipschitz_bound needs non-empty sets");
  auto mean_sq_norm = [](std::span<const SpectralVector> set) {
    double total = 0;
    for (const auto& v : set) {
      double n = 1.0;  // bias input
      for (double x : v.values) n += x * x;
      total += n;
    }
    return total / static_cast<double>(set.size());
  };
  return 2.0 * (mean_sq_norm(clean) + mean_sq_norm(noisy));
}

TrainResult train(std::span<const SpectralVector> clean, std::span<const SpectralVector> noisy,
                  const TrainConfig& cfg) {
  if (!(cfg.learning_rate > 0)) throw Error(ErrorCode::kInvalidArgument, "learning rate must be > 0");
  if (cfg.epochs < 0) throw Error(ErrorCode::kInvalidArgument, "epochs must be >= 0");
  if (clean.empty() || noisy.empty()) {
    throw Error(ErrorCode::kEmptyInput, "spectral discriminator needs non-empty clean and noisy sets");
  }
  TrainResult result{LinearDisc::zeros(clean.front().size()), {}};
  check_sets(result.disc, clean, noisy);
  result.loss_history.reserve(cfg.epochs);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const LinearDisc g = disc_gradient(result.disc, clean, noisy, cfg.targets);
    for (std::size_t i = 0; i < g.weights.size(); ++i) {
      result.disc.weights[i] -= cfg.learning_rate * g.weights[i];
    }
    result.disc.bias -= cfg.learning_rate * g.bias;
    result.loss_history.push_back(disc_objective(result.disc, clean, noisy, cfg.targets));
  }
  return result;
}

double evaluate(const LinearDisc& d, std::span<const SpectralVector> clean,
                std::span<const SpectralVector> noisy, LsganTargets targets) {
  check_sets(d, clean, noisy);
  std::size_t correct = 0;
  auto is_clean = [&](double s) {
    return std::abs(s - targets.real_target) < std::abs(s - targets.fake_target);
  };
  for (const auto& v : clean) correct += is_clean(forward(d, v)) ? 1 : 0;
  for (const auto& v : noisy) correct += is_clean(forward(d, v)) ? 0 : 1;
  return static_cast<double>(correct) / static_cast<double>(clean.size() + noisy.size());
}

void write_csv(std::ostream& out, const LinearDisc& d) {
  for (std::size_t i = 0; i < d.weights.size(); ++i) {
    out << (i ? "," : "") << csv::format_double(d.weights[i]);
  }
  out << '\n' << csv::format_double(d.bias) << '\n';
}

LinearDisc read_disc_csv(std::istream& in) {
  std::string weights_line;
  std::string bias_line;
  if (!csv::read_line(in, weights_line) || !csv::read_line(in, bias_line)) {
    throw Error(ErrorCode::kParse, "discriminator CSV needs a weights row and a bias row");
  }
  LinearDisc d;
  if (!weights_line.empty()) {
    for (const auto& f : csv::split(weights_line)) d.weights.push_back(csv::parse_double(f));
  }
  d.bias = csv::parse_double(bias_line);
  for (double w : d.weights) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kNonFinite, "discriminator weight is not finite");
  }
  if (!std::isfinite(d.bias)) throw Error(ErrorCode::kNonFinite, "discriminator bias is not finite");
  return d;
}

}  // namespace specden
