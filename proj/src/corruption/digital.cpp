#include <algorithm>
#include <cmath>

#include "transforms.hpp"

namespace endobench::detail {
namespace {

struct Footprint {
  int first = 0;
  std::vector<float> weights;  // normalized to sum 1
};

// Box-filter footprints mapping `src` samples onto `dst` <= src samples.
std::vector<Footprint> area_footprints(int src, int dst) {
  std::vector<Footprint> out(static_cast<std::size_t>(dst));
  const double ratio = static_cast<double>(src) / dst;
  for (int j = 0; j < dst; ++j) {
    const double lo = j * ratio;
    const double hi = (j + 1) * ratio;
    auto& fp = out[static_cast<std::size_t>(j)];
    fp.first = static_cast<int>(std::floor(lo));
    const int last = std::min(src - 1, static_cast<int>(std::ceil(hi)) - 1);
    double total = 0.0;
    std::vector<double> w;
    for (int i = fp.first; i <= last; ++i) {
      const double overlap = std::min(hi, i + 1.0) - std::max(lo, static_cast<double>(i));
      w.push_back(std::max(0.0, overlap));
      total += w.back();
    }
    for (const double v : w) fp.weights.push_back(static_cast<float>(v / total));
  }
  return out;
}

}  // namespace

// Box-average down to scale * size, then nearest-neighbour back up.
FloatImage pixelate(const FloatImage& image, const ParamRow& p) {
  const double scale = p["scale"];
  const int small_w = std::clamp(static_cast<int>(image.width * scale), 1, image.width);
  const int small_h = std::clamp(static_cast<int>(image.height * scale), 1, image.height);
  const auto fx = area_footprints(image.width, small_w);
  const auto fy = area_footprints(image.height, small_h);

  FloatImage rows(small_w, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < small_w; ++x) {
      const auto& fp = fx[static_cast<std::size_t>(x)];
      for (int c = 0; c < 3; ++c) {
        float acc = 0.0f;
        for (std::size_t k = 0; k < fp.weights.size(); ++k) {
          acc += fp.weights[k] * image.at(fp.first + static_cast<int>(k), y, c);
        }
        rows.at(x, y, c) = acc;
      }
    }
  }
  FloatImage small(small_w, small_h);
  for (int y = 0; y < small_h; ++y) {
    const auto& fp = fy[static_cast<std::size_t>(y)];
    for (int x = 0; x < small_w; ++x) {
      for (int c = 0; c < 3; ++c) {
        float acc = 0.0f;
        for (std::size_t k = 0; k < fp.weights.size(); ++k) {
          acc += fp.weights[k] * rows.at(x, fp.first + static_cast<int>(k), c);
        }
        small.at(x, y, c) = acc;
      }
    }
  }
  FloatImage out(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    const int sy = std::min(small_h - 1, static_cast<int>((static_cast<double>(y) + 0.5) * small_h / image.height));
    for (int x = 0; x < image.width; ++x) {
      const int sx = std::min(small_w - 1, static_cast<int>((static_cast<double>(x) + 0.5) * small_w / image.width));
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = small.at(sx, sy, c);
    }
  }
  return out;
}

// Uniform quantization of each channel to 2^bits levels spanning [0, 1].
FloatImage color_quant(const FloatImage& image, const ParamRow& p) {
  const int bits = std::clamp(static_cast<int>(p["bits"]), 1, 8);
  const auto steps = static_cast<float>((1 << bits) - 1);
  FloatImage out = image;
  for (auto& v : out.data) v = std::nearbyint(std::clamp(v, 0.0f, 1.0f) * steps) / steps;
  return out;
}

}  // namespace endobench::detail
