#include "endobench/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <json.hpp>

#include "endobench/error.hpp"
#include "endobench/image_io.hpp"
#include "endobench/rng.hpp"
#include "endobench/text_io.hpp"

namespace endobench::synth {
namespace fs = std::filesystem;
namespace {

constexpr std::uint64_t kVariantMix = 0x9e3779b97f4a7c15ULL;

// Uniform in [-1, 1) from a 64-bit hash.
double signed_unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1p-52 - 1.0; }

std::string frame_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%03d", i);
  return buf;
}

}  // namespace

RgbImage textured_image(int width, int height, std::uint64_t variant) {
  RgbImage im(width, height);
  const double phase = 0.7 * static_cast<double>(variant);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) {
        double v = 128 + 45 * std::sin(0.37 * x + 0.9 * c + phase) + 35 * std::cos(0.23 * y - 0.5 * c + 0.11 * x) +
                   20 * std::sin(0.71 * (x + y) + c + phase);
        const auto cell = static_cast<std::uint64_t>(y * width + x) * 3 + static_cast<std::uint64_t>(c);
        v += 30 * (static_cast<double>(splitmix64(cell ^ (variant * kVariantMix)) >> 40) / double(1 << 24) - 0.5);
        im.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return im;
}

depth::DepthMap synthetic_depth(int width, int height, std::uint64_t variant) {
  depth::DepthMap d(width, height);
  const double tilt = 0.15 * static_cast<double>(variant % 5);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double u = (x + 0.5) / width;
      const double v = (y + 0.5) / height;
      const double bowl = 30.0 * std::sin(std::numbers::pi * u) * std::sin(std::numbers::pi * v);
      d.at(x, y) = static_cast<float>(90.0 - bowl - 20.0 * tilt * u + 4.0 * std::cos(6.0 * u + 4.0 * v));
    }
  }
  return d;
}

dataset::DatasetManifest write_dataset(const fs::path& dir, const DatasetOptions& options) {
  if (options.frames < 0 || options.width < 1 || options.height < 1) {
    throw InvalidSpecError("synthetic dataset needs frames >= 0 and positive dimensions");
  }
  fs::create_directories(dir / "rgb");
  fs::create_directories(dir / "depth");
  dataset::DatasetManifest m;
  m.root = dir;
  m.split = "test";
  for (int i = 0; i < options.frames; ++i) {
    const auto id = frame_name(i);
    const std::uint64_t variant = splitmix64(options.seed + static_cast<std::uint64_t>(i)) % 1000;
    write_png(dir / "rgb" / (id + ".png"), textured_image(options.width, options.height, variant));
    depth::write_png16(dir / "depth" / (id + ".png"), synthetic_depth(options.width, options.height, variant));
    m.frames.push_back({id, dir / "rgb" / (id + ".png"), dir / "depth" / (id + ".png"), "seq_" + std::to_string(i / 4)});
  }
  write_text_file(dir / "manifest.json", dataset::manifest_to_json(m, dir));
  return dataset::load_manifest(dir / "manifest.json");
}

depth::DepthMap predict(const depth::DepthMap& gt, Predictor predictor, std::string_view frame_id, CorruptionType type,
                        int severity) {
  depth::DepthMap pred(gt.width(), gt.height());
  const std::uint64_t key = fnv1a64(frame_id) ^ (static_cast<std::uint64_t>(type) << 56);
  const double amplitude = (0.03 + 0.002 * static_cast<double>(type)) * severity;
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      const float d = gt.at(x, y);
      if (!(d > 0.0f)) continue;
      double factor = 1.0 + 0.08 * std::sin(0.2 * x + 0.3 * y);
      if (predictor == Predictor::kSeverityDegrading && severity > 0) {
        const auto cell = static_cast<std::uint64_t>(y) * static_cast<std::uint64_t>(gt.width()) + static_cast<std::uint64_t>(x);
        factor += amplitude * signed_unit(splitmix64(key ^ splitmix64(cell)));
      }
      pred.at(x, y) = static_cast<float>(d * factor);
    }
  }
  return pred;
}

void write_predictions(const dataset::DatasetManifest& manifest, const fs::path& out, Predictor predictor,
                       const std::vector<CorruptionType>& types, const std::vector<int>& severities) {
  fs::create_directories(out / "clean");
  for (const auto& frame : manifest.frames) {
    if (!frame.gt_depth_path) throw InvalidSpecError("frame " + frame.frame_id + " has no ground truth to predict from");
    const auto gt = depth::read_depth(*frame.gt_depth_path);
    // The type does not matter at severity 0.
    depth::write_png16(out / "clean" / (frame.frame_id + ".png"),
                       predict(gt, predictor, frame.frame_id, CorruptionType::kBrightness, 0));
    for (auto type : types) {
      for (int s : severities) {
        const auto dir = out / "pred" / std::string(to_string(type)) / std::to_string(s);
        fs::create_directories(dir);
        depth::write_png16(dir / (frame.frame_id + ".png"), predict(gt, predictor, frame.frame_id, type, s));
      }
    }
  }
}

}  // namespace endobench::synth
