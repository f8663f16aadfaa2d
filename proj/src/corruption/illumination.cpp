#include <algorithm>
#include <cmath>

#include "transforms.hpp"

namespace endobench::detail {

// Additive shift of the HSV value channel. Hue and saturation are kept and
// the HSV->RGB map is linear in value, so each pixel scales by v'/v.
FloatImage brightness(const FloatImage& image, const ParamRow& p) {
  const auto shift = static_cast<float>(p["shift"]);
  FloatImage out = image;
  for (std::size_t i = 0; i < out.data.size(); i += 3) {
    float* px = &out.data[i];
    const float v = std::max({px[0], px[1], px[2]});
    const float v_new = std::clamp(v + shift, 0.0f, 1.0f);
    if (v > 0.0f) {
      const float k = v_new / v;
      for (int c = 0; c < 3; ++c) px[c] = std::min(px[c] * k, 1.0f);
    } else {
      px[0] = px[1] = px[2] = v_new;
    }
  }
  return out;
}

// Multiplicative dimming after a gamma curve that deepens the midtones.
FloatImage dark(const FloatImage& image, const ParamRow& p) {
  const auto gain = static_cast<float>(p["gain"]);
  const auto gamma = static_cast<float>(p["gamma"]);
  FloatImage out = image;
  for (auto& v : out.data) v = gain * std::pow(v, gamma);
  return out;
}

// Pulls each channel toward its image mean.
FloatImage contrast(const FloatImage& image, const ParamRow& p) {
  const auto factor = static_cast<float>(p["factor"]);
  double sums[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < image.data.size(); i += 3) {
    for (int c = 0; c < 3; ++c) sums[c] += image.data[i + static_cast<std::size_t>(c)];
  }
  const double n = static_cast<double>(image.data.size() / 3);
  const float means[3] = {static_cast<float>(sums[0] / n), static_cast<float>(sums[1] / n),
                          static_cast<float>(sums[2] / n)};
  FloatImage out = image;
  for (std::size_t i = 0; i < out.data.size(); i += 3) {
    for (int c = 0; c < 3; ++c) {
      float& v = out.data[i + static_cast<std::size_t>(c)];
      v = (v - means[c]) * factor + means[c];
    }
  }
  return out;
}

}  // namespace endobench::detail
