#include <algorithm>
#include <cmath>
#include <numbers>

#include "transforms.hpp"

namespace endobench::detail {

Plane disk_kernel(double radius, double alias_sigma) {
  const int half = static_cast<int>(std::max(8.0, std::ceil(radius)));
  const int size = 2 * half + 1;
  Plane disk(size, size);
  double sum = 0.0;
  for (int y = -half; y <= half; ++y) {
    for (int x = -half; x <= half; ++x) {
      if (x * x + y * y <= radius * radius) {
        disk.at(x + half, y + half) = 1.0f;
        sum += 1.0;
      }
    }
  }
  for (auto& v : disk.data) v = static_cast<float>(v / sum);
  // Anti-alias the hard disk edge with a small Gaussian, truncated to a
  // 3x3 (or 5x5 for large disks) window.
  const int ar = radius <= 8.0 ? 1 : 2;
  std::vector<double> g(static_cast<std::size_t>(2 * ar + 1));
  double gsum = 0.0;
  for (int i = -ar; i <= ar; ++i) {
    g[static_cast<std::size_t>(i + ar)] = std::exp(-0.5 * i * i / (alias_sigma * alias_sigma));
    gsum += g[static_cast<std::size_t>(i + ar)];
  }
  for (auto& v : g) v /= gsum;
  Plane out(size, size);
  double total = 0.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      double acc = 0.0;
      for (int j = -ar; j <= ar; ++j) {
        for (int i = -ar; i <= ar; ++i) {
          const int sx = std::clamp(x + i, 0, size - 1);
          const int sy = std::clamp(y + j, 0, size - 1);
          acc += g[static_cast<std::size_t>(i + ar)] * g[static_cast<std::size_t>(j + ar)] * disk.at(sx, sy);
        }
      }
      out.at(x, y) = static_cast<float>(acc);
      total += acc;
    }
  }
  for (auto& v : out.data) v = static_cast<float>(v / total);
  return out;
}

FloatImage defocus_blur(const FloatImage& image, const ParamRow& p) {
  return convolve(image, disk_kernel(p["radius"], p["alias_sigma"]));
}

// One-sided Gaussian-weighted streak along a seed-drawn angle in
// [-45, 45] degrees. Tap i samples the image shifted i pixels along the
// streak, with edge replication.
FloatImage motion_blur(const FloatImage& image, const ParamRow& p, const NoiseSource& noise) {
  const int radius = static_cast<int>(p["radius"]);
  const double sigma = p["sigma"];
  const double angle = -45.0 + 90.0 * noise.uniform(kStreamGeometry, 0);
  const int width = 2 * radius + 1;

  std::vector<double> weights(static_cast<std::size_t>(width));
  double sum = 0.0;
  for (int i = 0; i < width; ++i) {
    weights[static_cast<std::size_t>(i)] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += weights[static_cast<std::size_t>(i)];
  }
  const double rad = angle * std::numbers::pi / 180.0;
  const double sy = std::sin(rad);
  const double sx = std::cos(rad);

  FloatImage out(image.width, image.height);
  for (int i = 0; i < width; ++i) {
    const int dy = -static_cast<int>(std::ceil(i * sy - 0.5));
    const int dx = -static_cast<int>(std::ceil(i * sx - 0.5));
    if (std::abs(dy) >= image.height || std::abs(dx) >= image.width) break;
    const auto w = static_cast<float>(weights[static_cast<std::size_t>(i)] / sum);
    for (int y = 0; y < image.height; ++y) {
      const int srcy = std::clamp(y - dy, 0, image.height - 1);
      for (int x = 0; x < image.width; ++x) {
        const int srcx = std::clamp(x - dx, 0, image.width - 1);
        for (int c = 0; c < 3; ++c) out.at(x, y, c) += w * image.at(srcx, srcy, c);
      }
    }
  }
  return out;
}

// Average of the image and center crops magnified by 1, 1 + step, ... up to
// max_zoom.
FloatImage zoom_blur(const FloatImage& image, const ParamRow& p) {
  const double max_zoom = p["max_zoom"];
  const double step = p["step"];
  std::vector<double> factors;
  for (int k = 0;; ++k) {
    const double f = 1.0 + k * step;
    if (f > max_zoom + 1e-9 || (k > 0 && !(step > 0.0))) break;
    factors.push_back(f);
  }
  FloatImage acc = image;
  const float cx = 0.5f * static_cast<float>(image.width);
  const float cy = 0.5f * static_cast<float>(image.height);
  for (const double f : factors) {
    const auto inv = static_cast<float>(1.0 / f);
    for (int y = 0; y < image.height; ++y) {
      const float syf = (static_cast<float>(y) + 0.5f - cy) * inv + cy - 0.5f;
      for (int x = 0; x < image.width; ++x) {
        const float sxf = (static_cast<float>(x) + 0.5f - cx) * inv + cx - 0.5f;
        for (int c = 0; c < 3; ++c) acc.at(x, y, c) += sample_bilinear(image, sxf, syf, c);
      }
    }
  }
  const auto norm = static_cast<float>(factors.size() + 1);
  for (auto& v : acc.data) v /= norm;
  return acc;
}

FloatImage gaussian_blur(const FloatImage& image, const ParamRow& p) { return blur_image(image, p["sigma"]); }

}  // namespace endobench::detail
