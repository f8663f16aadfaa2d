#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "endobench/corruption_type.hpp"
#include "endobench/dataset.hpp"
#include "endobench/depth.hpp"
#include "endobench/image.hpp"

namespace endobench::synth {

// Incommensurate sinusoids plus hashed grain: no block structure for pixelate
// or JPEG to line up with, enough detail for every blur to remove.
[[nodiscard]] RgbImage textured_image(int width, int height, std::uint64_t variant = 0);

// Smooth tissue-like surface in roughly [25, 95] mm.
[[nodiscard]] depth::DepthMap synthetic_depth(int width, int height, std::uint64_t variant = 0);

struct DatasetOptions {
  int frames = 8;
  int width = 64;
  int height = 48;
  std::uint64_t seed = 0;
};

// Writes `rgb/<id>.png`, `depth/<id>.png` (png16) and `manifest.json` under
// dir and returns the loaded manifest.
dataset::DatasetManifest write_dataset(const std::filesystem::path& dir, const DatasetOptions& options);

enum class Predictor {
  // Same fixed distortion of the ground truth at every severity.
  kSeverityInvariant,
  // The invariant distortion plus hashed noise whose amplitude grows with severity.
  kSeverityDegrading,
};

// The prediction a synthetic model makes for (frame, type, severity);
// severity 0 is the clean input.
[[nodiscard]] depth::DepthMap predict(const depth::DepthMap& gt, Predictor predictor, std::string_view frame_id,
                                      CorruptionType type, int severity);

// Writes `<out>/clean/<id>.png` and `<out>/pred/<ctype>/<severity>/<id>.png`.
void write_predictions(const dataset::DatasetManifest& manifest, const std::filesystem::path& out, Predictor predictor,
                       const std::vector<CorruptionType>& types, const std::vector<int>& severities);

}  // namespace endobench::synth
