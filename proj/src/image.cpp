#include "endobench/image.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "endobench/error.hpp"

namespace endobench {

RgbImage::RgbImage(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw ShapeError("image dimensions must be >= 1, got " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
  pixels_.assign(static_cast<std::size_t>(width) * height * kChannels, 0);
}

RgbImage::RgbImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 1 || height < 1) {
    throw ShapeError("image dimensions must be >= 1, got " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
  const auto expected = static_cast<std::size_t>(width) * height * kChannels;
  if (pixels_.size() != expected) {
    throw ShapeError("pixel buffer holds " + std::to_string(pixels_.size()) + " bytes, expected " +
                     std::to_string(expected));
  }
}

FloatImage to_float(const RgbImage& image) {
  FloatImage out(image.width(), image.height());
  const auto src = image.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) out.data[i] = static_cast<float>(src[i]) / 255.0f;
  return out;
}

std::uint8_t quantize_unit(float value) noexcept {
  const float scaled = value * 255.0f;
  if (!(scaled > 0.0f)) return 0;  // also maps NaN to 0
  if (scaled >= 255.0f) return 255;
  // Default rounding mode is round-half-to-even.
  return static_cast<std::uint8_t>(std::nearbyint(scaled));
}

RgbImage to_rgb8(const FloatImage& image) {
  std::vector<std::uint8_t> pixels(image.data.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = quantize_unit(image.data[i]);
  return RgbImage(image.width, image.height, std::move(pixels));
}

double psnr(const RgbImage& a, const RgbImage& b) {
  if (!a.same_shape(b) || a.size() != b.size()) {
    throw ShapeError("psnr: dimension mismatch (" + std::to_string(a.width()) + "x" +
                     std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                     std::to_string(b.height()) + ")");
  }
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const int d = static_cast<int>(pa[i]) - static_cast<int>(pb[i]);
    sse += static_cast<std::uint64_t>(d * d);
  }
  if (sse == 0) return std::numeric_limits<double>::infinity();
  const double mse = static_cast<double>(sse) / static_cast<double>(pa.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace endobench
