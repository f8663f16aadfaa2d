#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "endobench/depth.hpp"

namespace endobench::depth {

enum class Scaling { kNone, kPerFrameMedian };

// When predictions are clamped to [min_depth, max_depth].
enum class ClampOrder { kAfterScaling, kBeforeScaling, kNever };

struct EvalProtocol {
  double min_depth = 0.1;    // mm
  double max_depth = 150.0;  // mm
  Scaling scaling = Scaling::kPerFrameMedian;
  ClampOrder clamp = ClampOrder::kAfterScaling;
  double threshold_base = 1.25;
  std::array<int, 3> threshold_powers = {1, 2, 3};

  // Throws InvalidSpecError unless 0 < min_depth < max_depth and base > 1.
  void validate() const;

  // JSON object with any subset of the fields above; absent fields keep
  // their defaults. scaling: "none" | "median"; clamp: "after" | "before" | "never".
  [[nodiscard]] static EvalProtocol from_json_text(std::string_view text);

  friend bool operator==(const EvalProtocol&, const EvalProtocol&) = default;
};

// Metric index order is fixed: it is the row order of a severity series.
enum class Metric : std::uint8_t { kAbsRel = 0, kSqRel, kRmse, kLogRmse, kA1, kA2, kA3 };
inline constexpr std::size_t kNumMetrics = 7;
inline constexpr std::size_t kNumErrorMetrics = 4;
inline constexpr std::array<std::string_view, kNumMetrics> kMetricNames = {
    "abs_rel", "sq_rel", "rmse", "log_rmse", "a1", "a2", "a3"};

struct MetricRecord {
  std::array<double, kNumMetrics> values{};

  [[nodiscard]] double operator[](Metric m) const noexcept { return values[static_cast<std::size_t>(m)]; }
  double& operator[](Metric m) noexcept { return values[static_cast<std::size_t>(m)]; }
  [[nodiscard]] double abs_rel() const noexcept { return (*this)[Metric::kAbsRel]; }
  [[nodiscard]] double sq_rel() const noexcept { return (*this)[Metric::kSqRel]; }
  [[nodiscard]] double rmse() const noexcept { return (*this)[Metric::kRmse]; }
  [[nodiscard]] double log_rmse() const noexcept { return (*this)[Metric::kLogRmse]; }
  [[nodiscard]] double a1() const noexcept { return (*this)[Metric::kA1]; }
  [[nodiscard]] double a2() const noexcept { return (*this)[Metric::kA2]; }
  [[nodiscard]] double a3() const noexcept { return (*this)[Metric::kA3]; }
};

using Mask = std::vector<std::uint8_t>;

// 1 where gt is finite, > 0, and within [min_depth, max_depth].
[[nodiscard]] Mask valid_mask(const DepthMap& gt, const EvalProtocol& protocol);

// Median over cells where mask is set; mean of the two middle values for an
// even count.
[[nodiscard]] double masked_median(const DepthMap& map, const Mask& mask);

// pred * median(gt) / median(pred) over the mask. Throws
// DegenerateInputError for an empty mask or a zero prediction median.
[[nodiscard]] DepthMap median_scale(const DepthMap& pred, const DepthMap& gt, const Mask& mask);

// Standard monocular-depth errors and threshold accuracies over the valid
// mask. Throws ShapeError on size mismatch, DegenerateInputError when no
// cell is valid.
[[nodiscard]] MetricRecord frame_metrics(const DepthMap& pred, const DepthMap& gt, const EvalProtocol& protocol);

// Bilinear resampling (pixel-centre alignment). Invalid source cells carry
// no weight; an output cell whose four taps are all invalid is 0.
[[nodiscard]] DepthMap resample_pred(const DepthMap& pred, int target_width, int target_height);

// Per-metric arithmetic mean, compensated summation in list order.
[[nodiscard]] MetricRecord aggregate_frames(std::span<const MetricRecord> records);

}  // namespace endobench::depth
