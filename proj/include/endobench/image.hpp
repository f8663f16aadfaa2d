#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace endobench {

// 8-bit RGB raster, row-major, interleaved channels.
class RgbImage {
 public:
  static constexpr int kChannels = 3;

  RgbImage() = default;
  // Zero-filled image. Throws ShapeError if either dimension is < 1.
  RgbImage(int width, int height);
  // Takes ownership of `pixels`, which must hold width * height * 3 bytes.
  RgbImage(int width, int height, std::vector<std::uint8_t> pixels);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] bool empty() const noexcept { return pixels_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return pixels_.size(); }

  [[nodiscard]] std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  [[nodiscard]] std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  [[nodiscard]] std::uint8_t at(int x, int y, int c) const noexcept {
    return pixels_[index(x, y, c)];
  }
  std::uint8_t& at(int x, int y, int c) noexcept { return pixels_[index(x, y, c)]; }

  [[nodiscard]] std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels + c;
  }

  [[nodiscard]] bool same_shape(const RgbImage& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Float working copy in [0, 1], same layout as RgbImage.
struct FloatImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  FloatImage() = default;
  FloatImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0.0f) {}

  [[nodiscard]] std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width + x) * 3 + c;
  }
  [[nodiscard]] float at(int x, int y, int c) const noexcept { return data[index(x, y, c)]; }
  float& at(int x, int y, int c) noexcept { return data[index(x, y, c)]; }
};

[[nodiscard]] FloatImage to_float(const RgbImage& image);

// Scales by 255, rounds half-to-even, saturates to [0, 255].
[[nodiscard]] RgbImage to_rgb8(const FloatImage& image);

[[nodiscard]] std::uint8_t quantize_unit(float value) noexcept;

// Peak signal-to-noise ratio over all channels with peak 255. Returns
// +infinity for identical images. Throws ShapeError on dimension mismatch.
[[nodiscard]] double psnr(const RgbImage& a, const RgbImage& b);

}  // namespace endobench
