#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "specden/csv.hpp"
#include "specden/error.hpp"
#include "specden/filters.hpp"
#include "specden/image_io.hpp"
#include "specden/losses.hpp"
#include "specden/metrics.hpp"
#include "specden/rng.hpp"
#include "specden/scenes.hpp"
#include "specden/spectrum.hpp"

namespace specden::cli {
namespace fs = std::filesystem;

namespace {

void validate(const RunConfig& cfg) {
  if (cfg.patch < 16) throw CliError(kExitUsage, "--patch must be >= 16");
  if (cfg.random_patches < 0) throw CliError(kExitUsage, "--random-patches must be >= 0");
  std::error_code ec;
  if (!fs::is_directory(cfg.input_dir, ec)) {
    throw CliError(kExitUsage, "input directory does not exist: " + cfg.input_dir.string());
  }
  if (cfg.output_dir.empty()) throw CliError(kExitUsage, "--out is required");
  if (fs::weakly_canonical(cfg.input_dir) == fs::weakly_canonical(cfg.output_dir)) {
    throw CliError(kExitUsage, "input and output directories must differ");
  }
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw CliError(kExitUsage, "cannot create output directory " + cfg.output_dir.string());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw CliError(kExitData, "cannot write " + path.string());
}

void save(const Image& img, const fs::path& path) {
  try {
    save_image(img, path);
  } catch (const Error& e) {
    throw CliError(kExitData, e.what());
  }
}

std::vector<Image> images_of(const std::vector<Patch>& patches) {
  std::vector<Image> out;
  out.reserve(patches.size());
  for (const auto& p : patches) out.push_back(p.image);
  return out;
}

MetricsReport mean_report(const std::vector<MetricsReport>& rows) {
  MetricsReport m{0, 0, 0};
  for (const auto& r : rows) {
    m.psnr += r.psnr;
    m.ssim += r.ssim;
    m.lfd += r.lfd;
  }
  const double n = static_cast<double>(rows.size());
  return {m.psnr / n, m.ssim / n, m.lfd / n};
}

SpectrumStats load_stats(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitUsage, "cannot open stats file " + path.string());
  try {
    return read_stats_csv(in);
  } catch (const Error& e) {
    throw CliError(kExitData, path.string() + ": " + e.what());
  }
}

std::vector<Image> corrupt_all(const RunConfig& cfg, const std::vector<Image>& clean) {
  std::vector<Image> noisy;
  noisy.reserve(clean.size());
  for (std::size_t i = 0; i < clean.size(); ++i) noisy.push_back(corrupt(cfg, clean[i], i));
  return noisy;
}

std::string loss_csv(const char* index_name, const std::vector<double>& history) {
  std::ostringstream out;
  out << index_name << ",loss\n";
  for (std::size_t i = 0; i < history.size(); ++i) out << i << ',' << csv::format_double(history[i]) << '\n';
  return out.str();
}

}  // namespace

std::vector<fs::path> list_images(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_supported_image(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return files;
}

std::vector<Patch> load_patches(const RunConfig& cfg) {
  const auto files = list_images(cfg.input_dir);
  if (files.empty()) throw CliError(kExitUsage, "no PNG/PGM/PPM images in " + cfg.input_dir.string());
  std::vector<Patch> patches;
  for (std::size_t f = 0; f < files.size(); ++f) {
    Image img;
    try {
      img = load_image(files[f]);
    } catch (const Error& e) {
      throw CliError(kExitData, files[f].string() + ": " + e.what());
    }
    if (cfg.grayscale) img = to_grayscale(img);
    if (img.width() < cfg.patch || img.height() < cfg.patch) {
      throw CliError(kExitData, files[f].string() + ": smaller than the " + std::to_string(cfg.patch) +
                                    "px patch");
    }
    const std::string stem = files[f].stem().string();
    std::vector<Patch> own;
    if (cfg.random_patches == 0) {
      own.push_back({stem, center_patch(img, cfg.patch, cfg.patch)});
    } else {
      Rng rng(derive_seed(cfg.seed, f));
      for (int j = 0; j < cfg.random_patches; ++j) {
        const int x = static_cast<int>(rng.below(img.width() - cfg.patch + 1));
        const int y = static_cast<int>(rng.below(img.height() - cfg.patch + 1));
        own.push_back({stem + "_p" + std::to_string(j), crop_patch(img, x, y, cfg.patch, cfg.patch)});
      }
    }
    if (cfg.augment_hflip) {
      const std::size_t n = own.size();
      for (std::size_t j = 0; j < n; ++j) own.push_back({own[j].name + "_flip", hflip(own[j].image)});
    }
    for (auto& p : own) patches.push_back(std::move(p));
  }
  return patches;
}

Image corrupt(const RunConfig& cfg, const Image& clean, std::size_t index) {
  NoiseSpec spec = cfg.noise;
  spec.seed ^= cfg.seed;
  return apply_noise(clean, spec, index);
}

void split_halves(std::size_t n, std::uint64_t seed, std::vector<std::size_t>& first,
                  std::vector<std::size_t>& second) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  first.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n / 2));
  second.assign(order.begin() + static_cast<std::ptrdiff_t>(n / 2), order.end());
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
}

void cmd_spectrum_stats(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const auto clean = images_of(load_patches(cfg));
  const auto noisy = corrupt_all(cfg, clean);
  std::ostringstream clean_csv;
  std::ostringstream noisy_csv;
  write_csv(clean_csv, spectrum_stats(clean));
  write_csv(noisy_csv, spectrum_stats(noisy));
  write_file(cfg.output_dir / "clean_stats.csv", clean_csv.str());
  write_file(cfg.output_dir / "noisy_stats.csv", noisy_csv.str());
  log << "spectrum-stats: " << clean.size() << " patches, noise " << to_string(cfg.noise) << " -> "
      << (cfg.output_dir / "clean_stats.csv").string() << ", "
      << (cfg.output_dir / "noisy_stats.csv").string() << '\n';
}

DenoiseMethod parse_method(const std::string& text) {
  DenoiseMethod m;
  const std::size_t colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (kind == "lpf" && !arg.empty()) {
      m.kind = DenoiseMethod::Kind::kLpf;
      m.cutoff = csv::parse_double(arg);
      if (!(m.cutoff >= 0)) throw CliError(kExitUsage, "lpf cutoff must be >= 0");
    } else if (kind == "radial" && !arg.empty()) {
      m.kind = DenoiseMethod::Kind::kRadial;
      m.gains_file = arg;
    } else if (kind == "guided") {
      m.kind = DenoiseMethod::Kind::kGuided;
      if (!arg.empty()) {
        const auto fields = csv::split(arg);
        if (fields.size() != 2) throw CliError(kExitUsage, "guided method wants guided:RADIUS,EPS");
        m.radius = static_cast<int>(csv::parse_double(fields[0]));
        m.eps = csv::parse_double(fields[1]);
      }
    } else {
      throw CliError(kExitUsage, "unknown method '" + text + "' (want lpf:CUTOFF, radial:GAINS.csv or guided:R,EPS)");
    }
  } catch (const Error& e) {
    throw CliError(kExitUsage, "bad method '" + text + "': " + e.what());
  }
  return m;
}

void cmd_denoise(const RunConfig& cfg, const DenoiseMethod& method,
                 const std::optional<fs::path>& clean_dir, std::ostream& log) {
  validate(cfg);
  RadialGain gains;
  if (method.kind == DenoiseMethod::Kind::kRadial) {
    std::ifstream in(method.gains_file);
    if (!in) throw CliError(kExitUsage, "cannot open gains file " + method.gains_file.string());
    try {
      gains = read_gain_csv(in);
    } catch (const Error& e) {
      throw CliError(kExitData, method.gains_file.string() + ": " + e.what());
    }
    const std::size_t want = static_cast<std::size_t>(max_radius_bin(cfg.patch, cfg.patch)) + 1;
    if (gains.size() != want) {
      throw CliError(kExitData, method.gains_file.string() + ": has " + std::to_string(gains.size()) +
                                    " gains, patch size needs " + std::to_string(want));
    }
  }

  const auto inputs = load_patches(cfg);
  const bool synthesize = cfg.noise.kind != NoiseKind::kNone;
  std::vector<Image> noisy;
  std::vector<std::optional<Image>> refs(inputs.size());
  if (synthesize) {
    noisy = corrupt_all(cfg, images_of(inputs));
    for (std::size_t i = 0; i < inputs.size(); ++i) refs[i] = inputs[i].image;
  } else {
    noisy = images_of(inputs);
    if (clean_dir) {
      RunConfig clean_cfg = cfg;
      clean_cfg.input_dir = *clean_dir;
      for (const auto& p : load_patches(clean_cfg)) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
          if (inputs[i].name == p.name && p.image.same_shape(noisy[i])) refs[i] = p.image;
        }
      }
    }
  }

  std::ostringstream metrics;
  std::ostringstream noisy_metrics;
  write_metrics_header(metrics);
  write_metrics_header(noisy_metrics);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Image out;
    switch (method.kind) {
      case DenoiseMethod::Kind::kLpf:
        out = lpf_denoise(noisy[i], method.cutoff);
        break;
      case DenoiseMethod::Kind::kRadial:
        out = apply_gains(noisy[i], gains);
        break;
      case DenoiseMethod::Kind::kGuided:
        try {
          out = clamp01(guided_filter(noisy[i], noisy[i], {method.radius, method.eps}));
        } catch (const Error& e) {
          throw CliError(kExitUsage, std::string("guided filter: ") + e.what());
        }
        break;
    }
    save(out, cfg.output_dir / (inputs[i].name + ".png"));
    if (refs[i]) {
      write_metrics_row(metrics, inputs[i].name, measure(out, *refs[i]));
      write_metrics_row(noisy_metrics, inputs[i].name, measure(noisy[i], *refs[i]));
      ++rows;
    }
  }
  if (rows > 0) {
    write_file(cfg.output_dir / "metrics.csv", metrics.str());
    write_file(cfg.output_dir / "noisy_metrics.csv", noisy_metrics.str());
  }
  log << "denoise: " << inputs.size() << " patches -> " << cfg.output_dir.string() << ", " << rows
      << " metric rows\n";
}

void cmd_train_sd(const RunConfig& cfg, const TrainOptions& opts, std::ostream& log) {
  validate(cfg);
  const auto clean = images_of(load_patches(cfg));
  if (clean.size() < 4) {
    throw CliError(kExitUsage, "train-sd needs at least 4 patches, got " + std::to_string(clean.size()));
  }
  const auto noisy = corrupt_all(cfg, clean);
  const int r_tau = opts.r_tau >= 0 ? opts.r_tau : default_r_tau(cfg.patch);
  if (r_tau >= max_radius_bin(cfg.patch, cfg.patch)) throw CliError(kExitUsage, "--r-tau too large for the patch size");
  auto vec = [&](const Image& img) { return highpass_vector(azimuthal_integral(img), r_tau); };

  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> held_idx;
  split_halves(clean.size(), cfg.seed, train_idx, held_idx);
  std::vector<SpectralVector> train_clean, train_noisy, held_clean, held_noisy;
  for (std::size_t i : train_idx) {
    train_clean.push_back(vec(clean[i]));
    train_noisy.push_back(vec(noisy[i]));
  }
  for (std::size_t i : held_idx) {
    held_clean.push_back(vec(clean[i]));
    held_noisy.push_back(vec(noisy[i]));
  }

  TrainConfig tc = opts.train;
  tc.seed = cfg.seed;
  if (opts.auto_lr) tc.learning_rate = 1.0 / lipschitz_bound(train_clean, train_noisy);
  TrainResult result;
  try {
    result = train(train_clean, train_noisy, tc);
  } catch (const Error& e) {
    throw CliError(kExitUsage, std::string("train-sd: ") + e.what());
  }
  const double held = evaluate(result.disc, held_clean, held_noisy, tc.targets);
  const double seen = evaluate(result.disc, train_clean, train_noisy, tc.targets);

  std::ostringstream disc_csv;
  write_csv(disc_csv, result.disc);
  write_file(cfg.output_dir / "disc.csv", disc_csv.str());
  write_file(cfg.output_dir / "loss.csv", loss_csv("epoch", result.loss_history));
  std::ostringstream report;
  report << "held_out_accuracy=" << csv::format_double(held) << " train_accuracy=" << csv::format_double(seen)
         << " held_out=" << held_idx.size() * 2 << " epochs=" << tc.epochs
         << " learning_rate=" << csv::format_double(tc.learning_rate) << " r_tau=" << r_tau << '\n';
  write_file(cfg.output_dir / "accuracy.txt", report.str());
  log << report.str();
}

void cmd_fit_radial(const RunConfig& cfg, const fs::path& stats_csv, const FitConfig& fit,
                    std::ostream& log) {
  validate(cfg);
  const SpectrumStats stats = load_stats(stats_csv);
  const auto inputs = images_of(load_patches(cfg));
  const auto noisy = cfg.noise.kind == NoiseKind::kNone ? inputs : corrupt_all(cfg, inputs);
  FitResult result;
  try {
    result = fit_unsupervised(noisy, stats, fit);
  } catch (const Error& e) {
    throw CliError(e.code() == ErrorCode::kShapeMismatch ? kExitData : kExitUsage,
                   std::string("fit-radial: ") + e.what());
  }
  std::ostringstream gains_csv;
  write_csv(gains_csv, result.gain);
  write_file(cfg.output_dir / "gains.csv", gains_csv.str());
  write_file(cfg.output_dir / "fit_loss.csv", loss_csv("iteration", result.loss_history));
  log << "fit-radial: " << noisy.size() << " patches, loss " << csv::format_double(result.loss_history.front())
      << " -> " << csv::format_double(result.loss_history.back()) << '\n';
}

void cmd_ablate(const RunConfig& cfg, const AblateOptions& opts, std::ostream& log) {
  validate(cfg);
  const auto patches = images_of(load_patches(cfg));
  if (patches.size() < 2) throw CliError(kExitUsage, "ablate needs at least 2 patches");
  std::vector<std::size_t> ref_idx;
  std::vector<std::size_t> eval_idx;
  split_halves(patches.size(), cfg.seed, ref_idx, eval_idx);
  std::vector<Image> reference;
  std::vector<Image> clean;
  std::vector<Image> noisy;
  for (std::size_t i : ref_idx) reference.push_back(patches[i]);
  for (std::size_t i : eval_idx) {
    clean.push_back(patches[i]);
    noisy.push_back(corrupt(cfg, patches[i], i));
  }
  const SpectrumStats stats = spectrum_stats(reference);

  double cutoff = 0;
  if (opts.cutoff) {
    cutoff = *opts.cutoff;
  } else {
    std::vector<double> candidates;
    for (int r = 1; r <= max_radius_bin(cfg.patch, cfg.patch); ++r) candidates.push_back(r);
    cutoff = tune_lpf_cutoff(noisy, clean, candidates);
  }
  FitConfig no_spec = opts.fit;
  no_spec.weight_spec = 0;
  const RadialGain g_no_spec = fit_unsupervised(noisy, stats, no_spec).gain;
  const RadialGain g_full = fit_unsupervised(noisy, stats, opts.fit).gain;

  auto evaluate_variant = [&](auto&& denoise) {
    std::vector<MetricsReport> rows;
    for (std::size_t i = 0; i < noisy.size(); ++i) rows.push_back(measure(denoise(noisy[i]), clean[i]));
    return mean_report(rows);
  };
  struct Row {
    const char* name;
    MetricsReport m;
  };
  const Row rows[] = {
      {"identity", evaluate_variant([](const Image& x) { return x; })},
      {"lpf", evaluate_variant([&](const Image& x) { return lpf_denoise(x, cutoff); })},
      {"radial-no-spec", evaluate_variant([&](const Image& x) { return apply_gains(x, g_no_spec); })},
      {"radial-full", evaluate_variant([&](const Image& x) { return apply_gains(x, g_full); })},
  };
  std::ostringstream out;
  out << "variant,psnr,ssim,lfd\n";
  for (const Row& r : rows) {
    out << r.name << ',' << csv::format_double(r.m.psnr) << ',' << csv::format_double(r.m.ssim) << ','
        << csv::format_double(r.m.lfd) << '\n';
  }
  write_file(cfg.output_dir / "ablation.csv", out.str());
  log << "ablate: " << reference.size() << " reference / " << noisy.size() << " evaluation patches, lpf cutoff "
      << csv::format_double(cutoff) << '\n';
}

void cmd_synth(const SynthOptions& opts, std::ostream& log) {
  if (opts.count < 1 || opts.size < 16) throw CliError(kExitUsage, "synth needs --count >= 1 and --size >= 16");
  if (opts.channels != 1 && opts.channels != 3) throw CliError(kExitUsage, "--channels must be 1 or 3");
  std::error_code ec;
  fs::create_directories(opts.output_dir, ec);
  if (ec) throw CliError(kExitUsage, "cannot create " + opts.output_dir.string());
  SceneParams params;
  params.width = params.height = opts.size;
  params.channels = opts.channels;
  const auto scenes = synth_scenes(params, opts.seed, opts.count);
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "scene_%03zu.png", i);
    save(scenes[i], opts.output_dir / name);
  }
  log << "synth: wrote " << scenes.size() << " scenes to " << opts.output_dir.string() << '\n';
}

namespace {

struct RunFlags {
  std::string input_dir;
  std::string output_dir;
  std::string noise = "awgn:sigma=25";
  std::string grayscale = "on";
  RunConfig cfg;
};

void add_run_options(CLI::App* sub, RunFlags& f) {
  sub->add_option("--in", f.input_dir, "Input image directory")->required();
  sub->add_option("--out", f.output_dir, "Output directory")->required();
  sub->add_option("--noise", f.noise, "Noise spec, e.g. awgn:sigma=25, poisson:peak=255, structured:std=25")
      ->capture_default_str();
  sub->add_option("--patch", f.cfg.patch, "Patch side in pixels")->capture_default_str();
  sub->add_option("--seed", f.cfg.seed, "Seed for noise, crops and splits")->capture_default_str();
  sub->add_option("--grayscale", f.grayscale, "Convert inputs to luma")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  sub->add_option("--random-patches", f.cfg.random_patches, "Seeded random crops per image (0: centered)")
      ->capture_default_str();
  sub->add_flag("--augment-hflip", f.cfg.augment_hflip, "Add a horizontally flipped copy of every patch");
}

RunConfig finish(const RunFlags& f) {
  RunConfig cfg = f.cfg;
  cfg.input_dir = f.input_dir;
  cfg.output_dir = f.output_dir;
  cfg.grayscale = f.grayscale == "on";
  try {
    cfg.noise = parse_noise_spec(f.noise);
  } catch (const Error& e) {
    throw CliError(kExitUsage, e.what());
  }
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-domain denoising toolkit: spectra, losses, baselines and spectral-gain denoisers"};
  app.name("specden");
  app.require_subcommand(1);

  RunFlags stats_flags;
  auto* stats_cmd = app.add_subcommand("spectrum-stats", "Azimuthal spectrum statistics of clean and noisy patches");
  add_run_options(stats_cmd, stats_flags);

  RunFlags denoise_flags;
  std::string method = "lpf:20";
  std::string clean_dir;
  auto* denoise_cmd = app.add_subcommand("denoise", "Denoise patches and report PSNR/SSIM/LFD");
  add_run_options(denoise_cmd, denoise_flags);
  denoise_cmd->add_option("--method", method, "lpf:CUTOFF | radial:GAINS.csv | guided:RADIUS,EPS")
      ->capture_default_str();
  denoise_cmd->add_option("--clean", clean_dir, "Clean references when --noise none");

  RunFlags train_flags;
  TrainOptions train_opts;
  std::string lr_text = "auto";
  bool literal_targets = false;
  auto* train_cmd = app.add_subcommand("train-sd", "Train the linear spectral discriminator");
  add_run_options(train_cmd, train_flags);
  train_cmd->add_option("--epochs", train_opts.train.epochs, "Full-batch epochs")->capture_default_str();
  train_cmd->add_option("--lr", lr_text, "Learning rate, or 'auto' for 1/Lipschitz bound")->capture_default_str();
  train_cmd->add_option("--r-tau", train_opts.r_tau, "High-pass radius (default floor(H/(2*sqrt 2)))");
  train_cmd->add_flag("--literal-targets", literal_targets, "Use LSGAN targets (real 0, fake 1)");

  RunFlags fit_flags;
  FitConfig fit_cfg;
  std::string stats_path;
  auto* fit_cmd = app.add_subcommand("fit-radial", "Fit radial spectral gains without clean pairs");
  add_run_options(fit_cmd, fit_flags);
  fit_cmd->add_option("--stats", stats_path, "clean_stats.csv from spectrum-stats")->required();
  fit_cmd->add_option("--iterations", fit_cfg.iterations)->capture_default_str();
  fit_cmd->add_option("--lr", fit_cfg.learning_rate)->capture_default_str();
  fit_cmd->add_option("--weight-tv", fit_cfg.weight_tv)->capture_default_str();
  fit_cmd->add_option("--weight-spec", fit_cfg.weight_spec)->capture_default_str();

  RunFlags ablate_flags;
  AblateOptions ablate_opts;
  double ablate_cutoff = -1;
  auto* ablate_cmd = app.add_subcommand("ablate", "identity / lpf / radial-no-spec / radial-full comparison");
  add_run_options(ablate_cmd, ablate_flags);
  ablate_cmd->add_option("--cutoff", ablate_cutoff, "LPF cutoff (default: tuned on the evaluation half)");
  ablate_cmd->add_option("--iterations", ablate_opts.fit.iterations)->capture_default_str();

  SynthOptions synth_opts;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Write procedural dead-leaves scenes");
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();
  synth_cmd->add_option("--count", synth_opts.count)->capture_default_str();
  synth_cmd->add_option("--size", synth_opts.size)->capture_default_str();
  synth_cmd->add_option("--channels", synth_opts.channels)->capture_default_str();
  synth_cmd->add_option("--seed", synth_opts.seed)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*stats_cmd) {
      cmd_spectrum_stats(finish(stats_flags), out);
    } else if (*denoise_cmd) {
      std::optional<fs::path> clean;
      if (!clean_dir.empty()) clean = clean_dir;
      cmd_denoise(finish(denoise_flags), parse_method(method), clean, out);
    } else if (*train_cmd) {
      if (lr_text != "auto") {
        train_opts.auto_lr = false;
        try {
          train_opts.train.learning_rate = csv::parse_double(lr_text);
        } catch (const Error&) {
          throw CliError(kExitUsage, "--lr must be a number or 'auto'");
        }
      }
      if (literal_targets) train_opts.train.targets = LsganTargets::literal();
      cmd_train_sd(finish(train_flags), train_opts, out);
    } else if (*fit_cmd) {
      cmd_fit_radial(finish(fit_flags), stats_path, fit_cfg, out);
    } else if (*ablate_cmd) {
      if (ablate_cutoff >= 0) ablate_opts.cutoff = ablate_cutoff;
      cmd_ablate(finish(ablate_flags), ablate_opts, out);
    } else if (*synth_cmd) {
      synth_opts.output_dir = synth_out;
      cmd_synth(synth_opts, out);
    }
  } catch (const CliError& e) {
    err << "specden: " << e.what() << '\n';
    return e.exit_code();
  } catch (const Error& e) {
    err << "specden: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "specden: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace specden::cli
