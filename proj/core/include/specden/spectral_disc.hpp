#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "specden/losses.hpp"
#include "specden/spectrum.hpp"

namespace specden {

/// Single linear unit scoring a high-pass spectral vector:
/// score = dot(weights, v) + bias.
struct LinearDisc {
  std::vector<double> weights;
  double bias = 0.0;

  static LinearDisc zeros(std::size_t length) { return {std::vector<double>(length, 0.0), 0.0}; }
  friend bool operator==(const LinearDisc&, const LinearDisc&) = default;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  int epochs = 1000;
  std::uint64_t seed = 0;  ///< Carried for provenance; training is seed-free.
  LsganTargets targets;
};

double forward(const LinearDisc& d, const SpectralVector& v);

/// mean((D(clean) - real)^2) + mean((D(noisy) - fake)^2).
double disc_objective(const LinearDisc& d, std::span<const SpectralVector> clean,
                      std::span<const SpectralVector> noisy, LsganTargets targets = {});

/// Analytic gradient of disc_objective; the bias derivative is the `bias`
/// field of the result.
LinearDisc disc_gradient(const LinearDisc& d, std::span<const SpectralVector> clean,
                         std::span<const SpectralVector> noisy, LsganTargets targets = {});

/// Upper bound on the Lipschitz constant of the objective's gradient:
/// 2 * (mean |x|^2 over clean + mean |x|^2 over noisy), x = (v, 1).
/// Any learning rate <= 1/L makes full-batch descent monotone.
double lipschitz_bound(std::span<const SpectralVector> clean, std::span<const SpectralVector> noisy);

struct TrainResult {
  LinearDisc disc;
  std::vector<double> loss_history;  ///< Objective after each epoch's update.
};

/// Full-batch gradient descent from zero weights. Deterministic.
TrainResult train(std::span<const SpectralVector> clean, std::span<const SpectralVector> noisy,
                  const TrainConfig& cfg);

/// Fraction of vectors whose score is strictly nearer their own class target
/// (clean -> real_target, noisy -> fake_target). Ties count as fake.
double evaluate(const LinearDisc& d, std::span<const SpectralVector> clean,
                std::span<const SpectralVector> noisy, LsganTargets targets = {});

/// Two lines: comma-separated weights, then the bias.
void write_csv(std::ostream& out, const LinearDisc& d);
LinearDisc read_disc_csv(std::istream& in);

}  // namespace specden
