#include <algorithm>
#include <cmath>
#include <numbers>

#include "transforms.hpp"

namespace endobench::detail {

FloatImage gaussian_noise(const FloatImage& image, const ParamRow& p, const NoiseSource& noise) {
  const auto sigma = static_cast<float>(p["sigma"]);
  FloatImage out = image;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] += sigma * static_cast<float>(noise.normal(kStreamPixels, i));
  }
  return out;
}

// Salt-and-pepper on individual channel values. The flip decision uses a
// uniform compared against `amount`, so a larger amount flips a superset of
// the values flipped by a smaller one under the same seed.
FloatImage impulse_noise(const FloatImage& image, const ParamRow& p, const NoiseSource& noise) {
  const double amount = p["amount"];
  FloatImage out = image;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const auto w = noise.words(kStreamPixels, i);
    const double flip = (static_cast<double>(w[0]) + 0.5) * 0x1p-32;
    if (flip < amount) out.data[i] = (w[1] & 1u) ? 1.0f : 0.0f;
  }
  return out;
}

// Poisson photon counting at `photons` counts per unit intensity.
FloatImage shot_noise(const FloatImage& image, const ParamRow& p, const NoiseSource& noise) {
  const double photons = p["photons"];
  FloatImage out = image;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    const double mean = static_cast<double>(image.data[i]) * photons;
    out.data[i] = static_cast<float>(noise.poisson(kStreamPixels, i, mean) / photons);
  }
  return out;
}

// Poisson noise on luma plus Gaussian noise on the two chroma axes
// (full-range BT.601 YCbCr).
FloatImage iso_noise(const FloatImage& image, const ParamRow& p, const NoiseSource& noise) {
  const double photons = p["photons"];
  const auto chroma_sigma = static_cast<float>(p["chroma_sigma"]);
  FloatImage out(image.width, image.height);
  const std::size_t n = static_cast<std::size_t>(image.width) * image.height;
  for (std::size_t i = 0; i < n; ++i) {
    const float r = image.data[3 * i];
    const float g = image.data[3 * i + 1];
    const float b = image.data[3 * i + 2];
    const float luma = std::max(0.0f, 0.299f * r + 0.587f * g + 0.114f * b);
    float cb = 0.564f * (b - luma);
    float cr = 0.713f * (r - luma);

    const auto y_new = static_cast<float>(noise.poisson(kStreamPixels, i, luma * photons) / photons);
    const auto w = noise.words(kStreamAux, i);
    const double u0 = (static_cast<double>(w[0]) + 0.5) * 0x1p-32;
    const double u1 = (static_cast<double>(w[1]) + 0.5) * 0x1p-32;
    const double mag = std::sqrt(-2.0 * std::log(u0));
    const double theta = 2.0 * std::numbers::pi * u1;
    cb += chroma_sigma * static_cast<float>(mag * std::cos(theta));
    cr += chroma_sigma * static_cast<float>(mag * std::sin(theta));

    out.data[3 * i] = y_new + 1.403f * cr;
    out.data[3 * i + 1] = y_new - 0.344f * cb - 0.714f * cr;
    out.data[3 * i + 2] = y_new + 1.773f * cb;
  }
  return out;
}

}  // namespace endobench::detail
