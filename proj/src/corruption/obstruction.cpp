#include <algorithm>
#include <cmath>

#include "transforms.hpp"

namespace endobench::detail {
namespace {

constexpr float kHazeGray = 0.8f;
constexpr float kWater[3] = {175.0f / 255.0f, 238.0f / 255.0f, 238.0f / 255.0f};
constexpr float kMud[3] = {63.0f / 255.0f, 42.0f / 255.0f, 20.0f / 255.0f};

int next_pow2(int v) {
  int n = 2;
  while (n < v) n *= 2;
  return n;
}

}  // namespace

// Diamond-square on a toroidal map. Every cell except (0, 0) is written
// exactly once, so its random perturbation is keyed by the cell index.
Plane plasma_fractal(int map_size, double decay, const NoiseSource& noise) {
  const int n = map_size;
  Plane map(n, n);
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  double wibble = 100.0;
  auto perturb = [&](int x, int y) {
    const double u = noise.uniform(kStreamPixels, static_cast<std::uint64_t>(y) * n + x);
    return wibble * (2.0 * u - 1.0) * wibble;
  };
  for (int step = n; step >= 2; step /= 2) {
    const int half = step / 2;
    for (int y = 0; y < n; y += step) {
      for (int x = 0; x < n; x += step) {
        const double sum = double{map.at(x, y)} + map.at(wrap(x + step), y) + map.at(x, wrap(y + step)) +
                           map.at(wrap(x + step), wrap(y + step));
        map.at(x + half, y + half) = static_cast<float>(sum / 4.0 + perturb(x + half, y + half));
      }
    }
    for (int y = 0; y < n; y += step) {
      for (int x = 0; x < n; x += step) {
        // Top edge midpoint (x + half, y).
        const double top = double{map.at(x + half, y + half)} + map.at(x + half, wrap(y - half)) + map.at(x, y) +
                           map.at(wrap(x + step), y);
        map.at(x + half, y) = static_cast<float>(top / 4.0 + perturb(x + half, y));
        // Left edge midpoint (x, y + half).
        const double left = double{map.at(x + half, y + half)} + map.at(wrap(x - half), y + half) + map.at(x, y) +
                            map.at(x, wrap(y + step));
        map.at(x, y + half) = static_cast<float>(left / 4.0 + perturb(x, y + half));
      }
    }
    wibble /= decay;
  }
  const auto [lo, hi] = std::minmax_element(map.data.begin(), map.data.end());
  const float min_v = *lo;
  const float range = *hi - *lo;
  for (auto& v : map.data) v = range > 0.0f ? (v - min_v) / range : 0.0f;
  return map;
}

// Plasma haze blended toward light gray; peak opacity strength / (1 + strength).
FloatImage smoke(const FloatImage& image, const ParamRow& p, const NoiseSource& noise) {
  const double strength = p["strength"];
  const Plane haze = plasma_fractal(next_pow2(std::max(image.width, image.height)), p["decay"], noise);
  const auto peak = static_cast<float>(strength / (1.0 + strength));
  FloatImage out = image;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const float a = peak * haze.at(x, y);
      for (int c = 0; c < 3; ++c) {
        float& v = out.at(x, y, c);
        v = v * (1.0f - a) + kHazeGray * a;
      }
    }
  }
  return out;
}

// Liquid layer: blurred Gaussian noise thresholded into blobs. Water blobs
// are a translucent pale turquoise film; mud blobs (mud = 1) occlude with
// brown.
// density_scale scales the occlusion opacity in both modes.
FloatImage spatter(const FloatImage& image, const ParamRow& p, const NoiseSource& noise) {
  const double loc = p["loc"];
  const double scale = p["scale"];
  const double threshold = p["threshold"];
  const double intensity = p["intensity"];
  const bool mud = p["mud"] >= 0.5;
  const auto density = static_cast<float>(p["density_scale"]);

  Plane layer(image.width, image.height);
  for (std::size_t i = 0; i < layer.data.size(); ++i) {
    layer.data[i] = static_cast<float>(loc + scale * noise.normal(kStreamPixels, i));
  }
  layer = blur_plane(layer, p["sigma"]);

  FloatImage out = image;
  if (!mud) {
    float peak = 0.0f;
    for (auto& v : layer.data) {
      if (v < threshold) v = 0.0f;
      peak = std::max(peak, v);
    }
    if (peak <= 0.0f) return out;
    const auto gain = std::min(1.0f, static_cast<float>(intensity) * density) / peak;
    for (int y = 0; y < image.height; ++y) {
      for (int x = 0; x < image.width; ++x) {
        const float m = layer.at(x, y) * gain;
        if (m == 0.0f) continue;
        for (int c = 0; c < 3; ++c) {
          float& v = out.at(x, y, c);
          v = v * (1.0f - m) + kWater[c] * m;
        }
      }
    }
    return out;
  }

  Plane mask(image.width, image.height);
  for (std::size_t i = 0; i < mask.data.size(); ++i) mask.data[i] = layer.data[i] > threshold ? 1.0f : 0.0f;
  mask = blur_plane(mask, intensity);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const float m = mask.at(x, y);
      if (m < 0.8f) continue;
      const float a = m * density;
      for (int c = 0; c < 3; ++c) {
        float& v = out.at(x, y, c);
        v = v * (1.0f - a) + kMud[c] * a;
      }
    }
  }
  return out;
}

}  // namespace endobench::detail
