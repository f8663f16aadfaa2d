#pragma once

// Internal per-type transforms. Each takes the clean image in [0, 1] float
// space and the severity's parameter row.

#include <string_view>
#include <vector>

#include "endobench/corruption_type.hpp"
#include "endobench/image.hpp"
#include "endobench/rng.hpp"
#include "endobench/severity_params.hpp"

namespace endobench::detail {

class ParamRow {
 public:
  ParamRow(const SeverityParamTable& table, CorruptionType type, int severity)
      : table_(table), type_(type), severity_(severity) {}

  double operator[](std::string_view name) const { return table_.get(type_, severity_, name); }
  [[nodiscard]] int severity() const noexcept { return severity_; }

 private:
  const SeverityParamTable& table_;
  CorruptionType type_;
  int severity_;
};

// Noise streams. Fixed numbers so a field is stable across code changes.
inline constexpr std::uint32_t kStreamPixels = 1;
inline constexpr std::uint32_t kStreamAux = 2;
inline constexpr std::uint32_t kStreamGeometry = 3;

// Single-channel float plane, row-major.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  Plane(int w, int h, float fill = 0.0f) : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}
  [[nodiscard]] float at(int x, int y) const noexcept { return data[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) noexcept { return data[static_cast<std::size_t>(y) * width + x]; }
};

// Kernels (kernels.cpp). All borders replicate the edge pixel.
[[nodiscard]] std::vector<float> gaussian_kernel_1d(double sigma);
[[nodiscard]] Plane blur_plane(const Plane& plane, double sigma);
[[nodiscard]] FloatImage blur_image(const FloatImage& image, double sigma);
[[nodiscard]] FloatImage convolve(const FloatImage& image, const Plane& kernel);
[[nodiscard]] float sample_bilinear(const FloatImage& image, float x, float y, int c) noexcept;

// illumination.cpp
[[nodiscard]] FloatImage brightness(const FloatImage& image, const ParamRow& p);
[[nodiscard]] FloatImage dark(const FloatImage& image, const ParamRow& p);
[[nodiscard]] FloatImage contrast(const FloatImage& image, const ParamRow& p);

// blur.cpp
[[nodiscard]] Plane disk_kernel(double radius, double alias_sigma);
[[nodiscard]] FloatImage defocus_blur(const FloatImage& image, const ParamRow& p);
[[nodiscard]] FloatImage motion_blur(const FloatImage& image, const ParamRow& p, const NoiseSource& noise);
[[nodiscard]] FloatImage zoom_blur(const FloatImage& image, const ParamRow& p);
[[nodiscard]] FloatImage gaussian_blur(const FloatImage& image, const ParamRow& p);

// obstruction.cpp
[[nodiscard]] Plane plasma_fractal(int map_size, double decay, const NoiseSource& noise);
[[nodiscard]] FloatImage smoke(const FloatImage& image, const ParamRow& p, const NoiseSource& noise);
[[nodiscard]] FloatImage spatter(const FloatImage& image, const ParamRow& p, const NoiseSource& noise);

// noise.cpp
[[nodiscard]] FloatImage gaussian_noise(const FloatImage& image, const ParamRow& p, const NoiseSource& noise);
[[nodiscard]] FloatImage impulse_noise(const FloatImage& image, const ParamRow& p, const NoiseSource& noise);
[[nodiscard]] FloatImage shot_noise(const FloatImage& image, const ParamRow& p, const NoiseSource& noise);
[[nodiscard]] FloatImage iso_noise(const FloatImage& image, const ParamRow& p, const NoiseSource& noise);

// digital.cpp
[[nodiscard]] FloatImage pixelate(const FloatImage& image, const ParamRow& p);
[[nodiscard]] FloatImage color_quant(const FloatImage& image, const ParamRow& p);

}  // namespace endobench::detail
