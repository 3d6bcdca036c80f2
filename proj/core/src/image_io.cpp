#include "specden/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "specden/error.hpp"

namespace specden {
namespace fs = std::filesystem;

namespace {

constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G',
                                                       '\r', '\n', 0x1a, '\n'};

std::string lower_ext(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::vector<std::uint8_t> read_all(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kMissingFile, "no such file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, "cannot open: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

Image from_interleaved(const std::vector<std::uint8_t>& px, int w, int h, int ch) {
  Image img(w, h, ch);
  for (int c = 0; c < ch; ++c) {
    auto plane = img.plane(c);
    for (std::size_t i = 0; i < plane.size(); ++i) {
      plane[i] = px[i * ch + c] / 255.0;
    }
  }
  return img;
}

std::vector<std::uint8_t> to_interleaved(const Image& img) {
  const int ch = img.channels();
  std::vector<std::uint8_t> px(img.size());
  for (int c = 0; c < ch; ++c) {
    auto plane = img.plane(c);
    for (std::size_t i = 0; i < plane.size(); ++i) {
      const double v = std::clamp(plane[i], 0.0, 1.0);
      px[i * ch + c] = static_cast<std::uint8_t>(std::lround(v * 255.0));
    }
  }
  return px;
}

Image load_png(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  // Signature (8) + IHDR length/type (8) + IHDR payload (13).
  if (bytes.size() < 8 + 8 + 13 || std::string(bytes.begin() + 12, bytes.begin() + 16) != "IHDR") {
    throw Error(ErrorCode::kCorruptHeader, "PNG without IHDR chunk: " + path.string());
  }
  const std::uint8_t* ihdr = bytes.data() + 16;
  const std::uint32_t width = be32(ihdr);
  const std::uint32_t height = be32(ihdr + 4);
  const int bit_depth = ihdr[8];
  const int color_type = ihdr[9];
  if (width == 0 || height == 0 || width > (1u << 24) || height > (1u << 24)) {
    throw Error(ErrorCode::kCorruptHeader, "PNG has invalid dimensions: " + path.string());
  }
  if (bit_depth == 16) {
    throw Error(ErrorCode::kUnsupportedFormat, "16-bit PNG not supported: " + path.string());
  }

  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kCorruptHeader,
                "PNG decode failed for " + path.string() + ": " + image.message);
  }
  const bool gray = (color_type == PNG_COLOR_TYPE_GRAY ||
                     color_type == PNG_COLOR_TYPE_GRAY_ALPHA);
  const int ch = gray ? 1 : 3;
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  std::vector<std::uint8_t> px(PNG_IMAGE_SIZE(image));
  // A null background composites alpha over black; inputs are expected opaque.
  if (!png_image_finish_read(&image, nullptr, px.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kCorruptHeader, "PNG decode failed for " + path.string() + ": " + msg);
  }
  return from_interleaved(px, static_cast<int>(width), static_cast<int>(height), ch);
}

// Netpbm header tokenizer: whitespace and '#' comments between fields.
class PnmHeader {
 public:
  explicit PnmHeader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  long next_int() {
    skip_space();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) return -1;
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > (1L << 30)) return -1;
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  bool consume_single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) return false;
    ++pos_;
    return true;
  }

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

 private:
  void skip_space() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

Image load_pnm(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  const int ch = bytes[1] == '5' ? 1 : 3;
  PnmHeader header(bytes);
  header.seek(2);
  const long w = header.next_int();
  const long h = header.next_int();
  const long maxval = header.next_int();
  if (w <= 0 || h <= 0 || maxval <= 0 || !header.consume_single_space()) {
    throw Error(ErrorCode::kCorruptHeader, "malformed PGM/PPM header: " + path.string());
  }
  if (maxval != 255) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "PGM/PPM maxval " + std::to_string(maxval) + " not supported: " + path.string());
  }
  const std::size_t need = static_cast<std::size_t>(w) * h * ch;
  if (bytes.size() - header.pos() < need) {
    throw Error(ErrorCode::kCorruptHeader, "truncated PGM/PPM raster: " + path.string());
  }
  std::vector<std::uint8_t> px(bytes.begin() + header.pos(),
                               bytes.begin() + header.pos() + need);
  return from_interleaved(px, static_cast<int>(w), static_cast<int>(h), ch);
}

void save_png(const Image& img, const fs::path& path) {
  auto px = to_interleaved(img);
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = img.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.string().c_str(), 0, px.data(), 0, nullptr)) {
    throw Error(ErrorCode::kUnwritablePath,
                "cannot write " + path.string() + ": " + image.message);
  }
}

void save_pnm(const Image& img, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kUnwritablePath, "cannot write " + path.string());
  out << (img.channels() == 1 ? "P5" : "P6") << '\n'
      << img.width() << ' ' << img.height() << "\n255\n";
  auto px = to_interleaved(img);
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (!out) throw Error(ErrorCode::kUnwritablePath, "write failed: " + path.string());
}

}  // namespace

bool is_supported_image(const fs::path& path) {
  const std::string ext = lower_ext(path);
  return ext == ".png" || ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

Image load_image(const fs::path& path) {
  const auto bytes = read_all(path);
  if (bytes.size() >= kPngSignature.size() &&
      std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    return load_png(path, bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return load_pnm(path, bytes);
  }
  throw Error(ErrorCode::kUnsupportedFormat,
              "unrecognized image format (want PNG or binary PGM/PPM): " + path.string());
}

void save_image(const Image& img, const fs::path& path) {
  if (img.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot save an empty image");
  const std::string ext = lower_ext(path);
  if (ext == ".png") {
    save_png(img, path);
  } else if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
    save_pnm(img, path);
  } else {
    throw Error(ErrorCode::kUnsupportedFormat,
                "cannot infer output format from extension: " + path.string());
  }
}

}  // namespace specden
