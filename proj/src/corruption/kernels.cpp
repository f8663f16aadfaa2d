#include <algorithm>
#include <cmath>

#include "transforms.hpp"

namespace endobench::detail {
namespace {

inline int clamp_index(int i, int n) noexcept { return std::clamp(i, 0, n - 1); }

}  // namespace

std::vector<float> gaussian_kernel_1d(double sigma) {
  if (!(sigma > 0.0)) return {1.0f};
  // Truncate at four standard deviations.
  const int radius = static_cast<int>(4.0 * sigma + 0.5);
  std::vector<double> weights(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-0.5 * (i * i) / (sigma * sigma));
    weights[static_cast<std::size_t>(i + radius)] = w;
    sum += w;
  }
  std::vector<float> out(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) out[i] = static_cast<float>(weights[i] / sum);
  return out;
}

Plane blur_plane(const Plane& plane, double sigma) {
  const auto k = gaussian_kernel_1d(sigma);
  const int r = static_cast<int>(k.size() / 2);
  Plane tmp(plane.width, plane.height);
  for (int y = 0; y < plane.height; ++y) {
    for (int x = 0; x < plane.width; ++x) {
      float acc = 0.0f;
      for (int i = -r; i <= r; ++i) acc += k[static_cast<std::size_t>(i + r)] * plane.at(clamp_index(x + i, plane.width), y);
      tmp.at(x, y) = acc;
    }
  }
  Plane out(plane.width, plane.height);
  for (int y = 0; y < plane.height; ++y) {
    for (int x = 0; x < plane.width; ++x) {
      float acc = 0.0f;
      for (int i = -r; i <= r; ++i) acc += k[static_cast<std::size_t>(i + r)] * tmp.at(x, clamp_index(y + i, plane.height));
      out.at(x, y) = acc;
    }
  }
  return out;
}

FloatImage blur_image(const FloatImage& image, double sigma) {
  const auto k = gaussian_kernel_1d(sigma);
  const int r = static_cast<int>(k.size() / 2);
  FloatImage tmp(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        float acc = 0.0f;
        for (int i = -r; i <= r; ++i) {
          acc += k[static_cast<std::size_t>(i + r)] * image.at(clamp_index(x + i, image.width), y, c);
        }
        tmp.at(x, y, c) = acc;
      }
    }
  }
  FloatImage out(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      for (int c = 0; c < 3; ++c) {
        float acc = 0.0f;
        for (int i = -r; i <= r; ++i) {
          acc += k[static_cast<std::size_t>(i + r)] * tmp.at(x, clamp_index(y + i, image.height), c);
        }
        out.at(x, y, c) = acc;
      }
    }
  }
  return out;
}

FloatImage convolve(const FloatImage& image, const Plane& kernel) {
  struct Tap {
    int dx;
    int dy;
    float w;
  };
  // Disk kernels are mostly zeros; visit only the support.
  std::vector<Tap> taps;
  const int cx = kernel.width / 2;
  const int cy = kernel.height / 2;
  for (int ky = 0; ky < kernel.height; ++ky) {
    for (int kx = 0; kx < kernel.width; ++kx) {
      const float w = kernel.at(kx, ky);
      if (w != 0.0f) taps.push_back({kx - cx, ky - cy, w});
    }
  }
  FloatImage out(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      float acc[3] = {0.0f, 0.0f, 0.0f};
      for (const auto& t : taps) {
        const int sx = clamp_index(x + t.dx, image.width);
        const int sy = clamp_index(y + t.dy, image.height);
        for (int c = 0; c < 3; ++c) acc[c] += t.w * image.at(sx, sy, c);
      }
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = acc[c];
    }
  }
  return out;
}

float sample_bilinear(const FloatImage& image, float x, float y, int c) noexcept {
  const float fx = std::clamp(x, 0.0f, static_cast<float>(image.width - 1));
  const float fy = std::clamp(y, 0.0f, static_cast<float>(image.height - 1));
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const int x1 = std::min(x0 + 1, image.width - 1);
  const int y1 = std::min(y0 + 1, image.height - 1);
  const float tx = fx - static_cast<float>(x0);
  const float ty = fy - static_cast<float>(y0);
  const float top = image.at(x0, y0, c) * (1.0f - tx) + image.at(x1, y0, c) * tx;
  const float bottom = image.at(x0, y1, c) * (1.0f - tx) + image.at(x1, y1, c) * tx;
  return top * (1.0f - ty) + bottom * ty;
}

}  // namespace endobench::detail
