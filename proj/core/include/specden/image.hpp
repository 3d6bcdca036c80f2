#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace specden {

/// Channel-planar, row-major raster of doubles. Nominal value range is [0,1];
/// operations that clamp say so. Sample (x, y, c) lives at
/// `c*width*height + y*width + x`.
class Image {
 public:
  Image() = default;
  /// Zero-filled image. Throws on zero dimensions or channels not in {1,3}.
  Image(int width, int height, int channels);
  Image(int width, int height, int channels, double fill);
  Image(int width, int height, int channels, std::vector<double> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(width_) * height_;
  }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& at(int x, int y, int c = 0) {
    return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x];
  }
  double at(int x, int y, int c = 0) const {
    return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<double> plane(int c) {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<const double> plane(int c) const {
    return {data_.data() + c * plane_size(), plane_size()};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  /// Copy of channel `c` as a 1-channel image.
  Image channel(int c) const;

  bool same_shape(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  bool all_finite() const noexcept;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

/// Stacks 1-channel planes into one image (1 or 3 planes).
Image merge_channels(std::span<const Image> planes);

/// Throws ErrorCode::kShapeMismatch when shapes differ.
void require_same_shape(const Image& a, const Image& b, const char* what);

/// Clamps every sample to [0,1].
Image clamp01(Image img);

/// BT.601 luma (0.299, 0.587, 0.114); identity on 1-channel input.
Image to_grayscale(const Image& img);

/// Copies the w x h rectangle whose top-left corner is (x, y).
Image crop_patch(const Image& img, int x, int y, int w, int h);

/// The largest centered crop of size w x h.
Image center_patch(const Image& img, int w, int h);

/// Mirrors columns: (i, j) -> (width-1-i, j).
Image hflip(const Image& img);

}  // namespace specden
