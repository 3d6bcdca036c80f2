#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specden/image.hpp"
#include "specden/noise.hpp"
#include "specden/radial_denoiser.hpp"
#include "specden/spectral_disc.hpp"

namespace specden::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// Failure carrying the process exit code (2 usage/input, 3 data).
class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

struct RunConfig {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  int patch = 128;
  std::uint64_t seed = 0;
  NoiseSpec noise = parse_noise_spec("awgn:sigma=25");
  bool grayscale = true;
  int random_patches = 0;  ///< 0: one centered patch per image.
  bool augment_hflip = false;
};

/// One extracted patch and the name its outputs are written under.
struct Patch {
  std::string name;
  Image image;
};

/// Supported image files directly inside `dir`, sorted by filename.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

/// Loads every image, applies grayscale conversion, and cuts patches
/// (centered, or `random_patches` seeded crops, then optional flips).
std::vector<Patch> load_patches(const RunConfig& cfg);

/// Noise for the `index`-th patch: seed derive_seed(noise.seed ^ cfg.seed, index).
Image corrupt(const RunConfig& cfg, const Image& clean, std::size_t index);

/// Deterministic split of n items into two halves using `seed`.
void split_halves(std::size_t n, std::uint64_t seed, std::vector<std::size_t>& first,
                  std::vector<std::size_t>& second);

void cmd_spectrum_stats(const RunConfig& cfg, std::ostream& log);

struct DenoiseMethod {
  enum class Kind { kLpf, kRadial, kGuided } kind = Kind::kLpf;
  double cutoff = 0;
  std::filesystem::path gains_file;
  int radius = 8;
  double eps = 0.01;
};

/// `lpf:CUTOFF`, `radial:GAINS.csv`, `guided:RADIUS,EPS`.
DenoiseMethod parse_method(const std::string& text);

/// `clean_dir` supplies references when the inputs are already noisy
/// (noise kind `none`); otherwise the inputs are the references.
void cmd_denoise(const RunConfig& cfg, const DenoiseMethod& method,
                 const std::optional<std::filesystem::path>& clean_dir, std::ostream& log);

struct TrainOptions {
  TrainConfig train;
  bool auto_lr = true;  ///< learning_rate = 1 / lipschitz_bound(training set).
  int r_tau = -1;
};

void cmd_train_sd(const RunConfig& cfg, const TrainOptions& opts, std::ostream& log);

void cmd_fit_radial(const RunConfig& cfg, const std::filesystem::path& stats_csv,
                    const FitConfig& fit, std::ostream& log);

struct AblateOptions {
  FitConfig fit;
  std::optional<double> cutoff;  ///< Unset: tuned against the references.
};

void cmd_ablate(const RunConfig& cfg, const AblateOptions& opts, std::ostream& log);

struct SynthOptions {
  std::filesystem::path output_dir;
  int count = 20;
  int size = 160;
  int channels = 1;
  std::uint64_t seed = 0;
};

void cmd_synth(const SynthOptions& opts, std::ostream& log);

/// Full command-line entry point; returns the process exit code. Diagnostics
/// go to `err`, one line per failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specden::cli
