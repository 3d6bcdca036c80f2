#include "specden/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specden/error.hpp"

namespace specden {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
    case ErrorCode::kOutOfBounds: return "out of bounds";
    case ErrorCode::kMissingFile: return "missing file";
    case ErrorCode::kUnsupportedFormat: return "unsupported format";
    case ErrorCode::kCorruptHeader: return "corrupt header";
    case ErrorCode::kUnwritablePath: return "unwritable path";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kNonFinite: return "non-finite value";
    case ErrorCode::kParse: return "parse error";
  }
  return "unknown";
}

namespace {

void check_dims(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "image channels must be 1 or 3, got " + std::to_string(channels));
  }
}

}  // namespace

Image::Image(int width, int height, int channels)
    : Image(width, height, channels, 0.0) {}

Image::Image(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels);
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image::Image(int width, int height, int channels, std::vector<double> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height, channels);
  if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw Error(ErrorCode::kInvalidArgument,
                "image data length does not match width*height*channels");
  }
}

Image Image::channel(int c) const {
  if (c < 0 || c >= channels_) {
    throw Error(ErrorCode::kOutOfBounds, "channel index out of range");
  }
  auto p = plane(c);
  return Image(width_, height_, 1, std::vector<double>(p.begin(), p.end()));
}

bool Image::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Image merge_channels(std::span<const Image> planes) {
  if (planes.empty()) throw Error(ErrorCode::kEmptyInput, "no planes to merge");
  const Image& first = planes.front();
  std::vector<double> data;
  data.reserve(first.plane_size() * planes.size());
  for (const Image& p : planes) {
    if (p.channels() != 1 || p.width() != first.width() ||
        p.height() != first.height()) {
      throw Error(ErrorCode::kShapeMismatch, "merge_channels: plane shape mismatch");
    }
    data.insert(data.end(), p.data().begin(), p.data().end());
  }
  return Image(first.width(), first.height(), static_cast<int>(planes.size()),
               std::move(data));
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(what) + ": image shapes differ (" +
                    std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                    "x" + std::to_string(a.channels()) + " vs " +
                    std::to_string(b.width()) + "x" + std::to_string(b.height()) +
                    "x" + std::to_string(b.channels()) + ")");
  }
}

Image clamp01(Image img) {
  for (double& v : img.data()) v = std::clamp(v, 0.0, 1.0);
  return img;
}

Image to_grayscale(const Image& img) {
  if (img.channels() == 1) return img;
  Image out(img.width(), img.height(), 1);
  auto r = img.plane(0);
  auto g = img.plane(1);
  auto b = img.plane(2);
  auto y = out.plane(0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
  }
  return out;
}

Image crop_patch(const Image& img, int x, int y, int w, int h) {
  if (w < 1 || h < 1 || x < 0 || y < 0 || x + w > img.width() ||
      y + h > img.height()) {
    throw Error(ErrorCode::kOutOfBounds,
                "crop rectangle (" + std::to_string(x) + "," + std::to_string(y) +
                    "," + std::to_string(w) + "," + std::to_string(h) +
                    ") exceeds " + std::to_string(img.width()) + "x" +
                    std::to_string(img.height()));
  }
  Image out(w, h, img.channels());
  for (int c = 0; c < img.channels(); ++c) {
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) out.at(i, j, c) = img.at(x + i, y + j, c);
    }
  }
  return out;
}

Image center_patch(const Image& img, int w, int h) {
  return crop_patch(img, (img.width() - w) / 2, (img.height() - h) / 2, w, h);
}

Image hflip(const Image& img) {
  Image out(img.width(), img.height(), img.channels());
  const int w = img.width();
  for (int c = 0; c < img.channels(); ++c) {
    for (int j = 0; j < img.height(); ++j) {
      for (int i = 0; i < w; ++i) out.at(w - 1 - i, j, c) = img.at(i, j, c);
    }
  }
  return out;
}

}  // namespace specden
