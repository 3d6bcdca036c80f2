#include "specden/noise.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "specden/csv.hpp"
#include "specden/error.hpp"
#include "specden/filters.hpp"
#include "specden/rng.hpp"

namespace specden {

namespace {

const NoiseSpec kDefaults{};

Image finish(Image img, bool clamp) { return clamp ? clamp01(std::move(img)) : img; }

[[noreturn]] void bad_spec(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::kParse, "noise spec '" + std::string(text) + "': " + why);
}

std::uint64_t parse_u64(std::string_view text, std::string_view value) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) bad_spec(text, "bad integer '" + std::string(value) + "'");
  return v;
}

double parse_number(std::string_view text, std::string_view value) {
  try {
    return csv::parse_double(value);
  } catch (const Error&) {
    bad_spec(text, "bad number '" + std::string(value) + "'");
  }
}

void validate(const NoiseSpec& s) {
  if (!(s.sigma >= 0)) throw Error(ErrorCode::kInvalidArgument, "noise sigma must be >= 0");
  if (!(s.peak > 0)) throw Error(ErrorCode::kInvalidArgument, "poisson peak must be > 0");
  if (s.kernel_size < 1 || s.kernel_size % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument, "structured kernel size must be odd");
  }
  if (!(s.kernel_sigma > 0)) throw Error(ErrorCode::kInvalidArgument, "structured kernel sigma must be > 0");
  if (!(s.target_std >= 0)) throw Error(ErrorCode::kInvalidArgument, "structured std must be >= 0");
}

}  // namespace

NoiseSpec parse_noise_spec(std::string_view text) {
  NoiseSpec spec;
  const std::size_t colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  if (kind == "none") {
    spec.kind = NoiseKind::kNone;
  } else if (kind == "awgn") {
    spec.kind = NoiseKind::kAwgn;
  } else if (kind == "poisson") {
    spec.kind = NoiseKind::kPoisson;
  } else if (kind == "structured") {
    spec.kind = NoiseKind::kStructured;
  } else {
    bad_spec(text, "unknown kind '" + std::string(kind) + "'");
  }
  if (colon != std::string_view::npos) {
    for (const std::string& field : csv::split(text.substr(colon + 1))) {
      const std::size_t eq = field.find('=');
      if (eq == std::string::npos) bad_spec(text, "expected key=value, got '" + field + "'");
      const std::string key = field.substr(0, eq);
      const std::string_view value = std::string_view(field).substr(eq + 1);
      if (key == "seed") {
        spec.seed = parse_u64(text, value);
      } else if (key == "clamp") {
        if (value == "on") spec.clamp = true;
        else if (value == "off") spec.clamp = false;
        else bad_spec(text, "clamp must be on or off");
      } else if (key == "sigma" && spec.kind == NoiseKind::kAwgn) {
        spec.sigma = parse_number(text, value);
      } else if (key == "peak" && spec.kind == NoiseKind::kPoisson) {
        spec.peak = parse_number(text, value);
      } else if (key == "std" && spec.kind == NoiseKind::kStructured) {
        spec.target_std = parse_number(text, value);
      } else if (key == "ksize" && spec.kind == NoiseKind::kStructured) {
        spec.kernel_size = static_cast<int>(parse_u64(text, value));
      } else if (key == "ksigma" && spec.kind == NoiseKind::kStructured) {
        spec.kernel_sigma = parse_number(text, value);
      } else {
        bad_spec(text, "unknown key '" + key + "' for kind '" + std::string(kind) + "'");
      }
    }
  }
  validate(spec);
  return spec;
}

std::string to_string(const NoiseSpec& s) {
  std::string out;
  std::vector<std::string> keys;
  switch (s.kind) {
    case NoiseKind::kNone:
      out = "none";
      break;
    case NoiseKind::kAwgn:
      out = "awgn";
      keys.push_back("sigma=" + csv::format_double(s.sigma));
      break;
    case NoiseKind::kPoisson:
      out = "poisson";
      keys.push_back("peak=" + csv::format_double(s.peak));
      break;
    case NoiseKind::kStructured:
      out = "structured";
      keys.push_back("std=" + csv::format_double(s.target_std));
      if (s.kernel_size != kDefaults.kernel_size) keys.push_back("ksize=" + std::to_string(s.kernel_size));
      if (s.kernel_sigma != kDefaults.kernel_sigma) keys.push_back("ksigma=" + csv::format_double(s.kernel_sigma));
      break;
  }
  if (s.seed != 0) keys.push_back("seed=" + std::to_string(s.seed));
  if (!s.clamp) keys.push_back("clamp=off");
  for (std::size_t i = 0; i < keys.size(); ++i) out += (i == 0 ? ":" : ",") + keys[i];
  return out;
}

Image add_awgn(const Image& img, double sigma, std::uint64_t seed, bool clamp) {
  if (!(sigma >= 0)) throw Error(ErrorCode::kInvalidArgument, "awgn sigma must be >= 0");
  if (sigma == 0) return img;
  Rng rng(seed);
  const double scale = sigma / 255.0;
  Image out = img;
  for (double& v : out.data()) v += scale * rng.normal();
  return finish(std::move(out), clamp);
}

Image add_poisson(const Image& img, double peak, std::uint64_t seed, bool clamp) {
  if (!(peak > 0)) throw Error(ErrorCode::kInvalidArgument, "poisson peak must be > 0");
  Rng rng(seed);
  Image out = img;
  for (double& v : out.data()) {
    if (v < 0) throw Error(ErrorCode::kInvalidArgument, "poisson noise needs non-negative samples");
    v = static_cast<double>(rng.poisson(v * peak)) / peak;
  }
  return finish(std::move(out), clamp);
}

Image add_structured(const Image& img, const StructuredNoise& params, std::uint64_t seed, bool clamp) {
  if (params.kernel_size < 1 || params.kernel_size % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "structured noise kernel size must be odd, got " + std::to_string(params.kernel_size));
  }
  if (!(params.target_std >= 0)) throw Error(ErrorCode::kInvalidArgument, "structured std must be >= 0");
  if (params.target_std == 0) return img;
  const Kernel kernel = Kernel::gaussian(params.kernel_size, params.kernel_sigma);
  Rng rng(seed);
  Image white(img.width(), img.height(), img.channels());
  for (double& v : white.data()) v = rng.normal();
  Image field = convolve2d(white, kernel);
  const double target = params.target_std / 255.0;
  Image out = img;
  for (int c = 0; c < img.channels(); ++c) {
    auto f = field.plane(c);
    double mean = 0.0;
    for (double v : f) mean += v;
    mean /= static_cast<double>(f.size());
    double var = 0.0;
    for (double v : f) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(f.size()));
    const double gain = sd > 0 ? target / sd : 0.0;
    auto o = out.plane(c);
    for (std::size_t i = 0; i < f.size(); ++i) o[i] += gain * f[i];
  }
  return finish(std::move(out), clamp);
}

Image apply_noise(const Image& img, const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseKind::kNone:
      return img;
    case NoiseKind::kAwgn:
      return add_awgn(img, spec.sigma, spec.seed, spec.clamp);
    case NoiseKind::kPoisson:
      return add_poisson(img, spec.peak, spec.seed, spec.clamp);
    case NoiseKind::kStructured:
      return add_structured(img, {spec.kernel_size, spec.kernel_sigma, spec.target_std}, spec.seed,
                            spec.clamp);
  }
  return img;
}

Image apply_noise(const Image& img, const NoiseSpec& spec, std::uint64_t index) {
  NoiseSpec derived = spec;
  derived.seed = derive_seed(spec.seed, index);
  return apply_noise(img, derived);
}

}  // namespace specden
