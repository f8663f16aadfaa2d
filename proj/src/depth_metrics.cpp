#include "endobench/depth_metrics.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "endobench/error.hpp"

namespace endobench::depth {
namespace {

bool is_valid_depth(float v) noexcept { return std::isfinite(v) && v > 0.0f; }

void clamp_inplace(DepthMap& map, const EvalProtocol& protocol) {
  const auto lo = static_cast<float>(protocol.min_depth);
  const auto hi = static_cast<float>(protocol.max_depth);
  for (auto& v : map.values()) {
    if (!std::isnan(v)) v = std::clamp(v, lo, hi);
  }
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

void EvalProtocol::validate() const {
  if (!(min_depth > 0.0) || !(max_depth > min_depth)) {
    throw InvalidSpecError("protocol requires 0 < min_depth < max_depth");
  }
  if (!(threshold_base > 1.0)) throw InvalidSpecError("protocol threshold_base must exceed 1");
}

EvalProtocol EvalProtocol::from_json_text(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("protocol file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("protocol file must hold a JSON object");
  EvalProtocol p;
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "min_depth") {
        p.min_depth = value.get<double>();
      } else if (key == "max_depth") {
        p.max_depth = value.get<double>();
      } else if (key == "threshold_base") {
        p.threshold_base = value.get<double>();
      } else if (key == "threshold_powers") {
        p.threshold_powers = value.get<std::array<int, 3>>();
      } else if (key == "scaling") {
        const auto s = value.get<std::string>();
        if (s == "none") {
          p.scaling = Scaling::kNone;
        } else if (s == "median") {
          p.scaling = Scaling::kPerFrameMedian;
        } else {
          throw ParseError("protocol scaling must be 'none' or 'median', got '" + s + "'");
        }
      } else if (key == "clamp") {
        const auto s = value.get<std::string>();
        if (s == "after") {
          p.clamp = ClampOrder::kAfterScaling;
        } else if (s == "before") {
          p.clamp = ClampOrder::kBeforeScaling;
        } else if (s == "never") {
          p.clamp = ClampOrder::kNever;
        } else {
          throw ParseError("protocol clamp must be 'after', 'before' or 'never', got '" + s + "'");
        }
      } else {
        throw ParseError("unknown protocol field '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError("protocol field '" + key + "': " + e.what());
    }
  }
  p.validate();
  return p;
}

Mask valid_mask(const DepthMap& gt, const EvalProtocol& protocol) {
  Mask mask(gt.size(), 0);
  const auto values = gt.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const float v = values[i];
    mask[i] = is_valid_depth(v) && v >= protocol.min_depth && v <= protocol.max_depth ? 1 : 0;
  }
  return mask;
}

double masked_median(const DepthMap& map, const Mask& mask) {
  if (mask.size() != map.size()) throw ShapeError("mask size does not match depth map");
  std::vector<double> picked;
  const auto values = map.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mask[i]) picked.push_back(values[i]);
  }
  if (picked.empty()) throw DegenerateInputError("no valid pixels for median");
  const auto mid = picked.size() / 2;
  std::nth_element(picked.begin(), picked.begin() + static_cast<std::ptrdiff_t>(mid), picked.end());
  const double upper = picked[mid];
  if (picked.size() % 2 == 1) return upper;
  const double lower = *std::max_element(picked.begin(), picked.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

DepthMap median_scale(const DepthMap& pred, const DepthMap& gt, const Mask& mask) {
  if (!pred.same_shape(gt)) throw ShapeError("median_scale: prediction and ground truth differ in size");
  const double gt_median = masked_median(gt, mask);
  const double pred_median = masked_median(pred, mask);
  if (pred_median == 0.0 || !std::isfinite(pred_median)) {
    throw DegenerateInputError("prediction median is zero or non-finite; cannot median-scale");
  }
  const double ratio = gt_median / pred_median;
  DepthMap out = pred;
  for (auto& v : out.values()) v = static_cast<float>(v * ratio);
  return out;
}

MetricRecord frame_metrics(const DepthMap& pred_in, const DepthMap& gt, const EvalProtocol& protocol) {
  if (!pred_in.same_shape(gt)) {
    throw ShapeError("prediction is " + std::to_string(pred_in.width()) + "x" + std::to_string(pred_in.height()) +
                     " but ground truth is " + std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
  }
  Mask mask = valid_mask(gt, protocol);
  const auto raw = pred_in.values();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    const float p = raw[i];
    if (!std::isfinite(p) || (protocol.clamp == ClampOrder::kNever && p <= 0.0f)) mask[i] = 0;
  }
  if (std::find(mask.begin(), mask.end(), 1) == mask.end()) {
    throw DegenerateInputError("frame has no valid ground-truth pixels");
  }

  DepthMap pred = pred_in;
  if (protocol.clamp == ClampOrder::kBeforeScaling) clamp_inplace(pred, protocol);
  if (protocol.scaling == Scaling::kPerFrameMedian) pred = median_scale(pred, gt, mask);
  if (protocol.clamp == ClampOrder::kAfterScaling) clamp_inplace(pred, protocol);

  std::array<double, 3> thresholds{};
  for (std::size_t k = 0; k < 3; ++k) thresholds[k] = std::pow(protocol.threshold_base, protocol.threshold_powers[k]);

  double abs_rel = 0.0, sq_rel = 0.0, sq = 0.0, log_sq = 0.0;
  std::array<std::size_t, 3> within{};
  std::size_t n = 0;
  const auto pv = pred.values();
  const auto gv = gt.values();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    const double d = gv[i];
    const double p = pv[i];
    const double diff = p - d;
    abs_rel += std::abs(diff) / d;
    sq_rel += diff * diff / d;
    sq += diff * diff;
    const double ld = std::log(p) - std::log(d);
    log_sq += ld * ld;
    const double ratio = std::max(p / d, d / p);
    for (std::size_t k = 0; k < 3; ++k) within[k] += ratio < thresholds[k] ? 1 : 0;
    ++n;
  }
  const auto count = static_cast<double>(n);
  MetricRecord r;
  r[Metric::kAbsRel] = abs_rel / count;
  r[Metric::kSqRel] = sq_rel / count;
  r[Metric::kRmse] = std::sqrt(sq / count);
  r[Metric::kLogRmse] = std::sqrt(log_sq / count);
  r[Metric::kA1] = static_cast<double>(within[0]) / count;
  r[Metric::kA2] = static_cast<double>(within[1]) / count;
  r[Metric::kA3] = static_cast<double>(within[2]) / count;
  return r;
}

DepthMap resample_pred(const DepthMap& pred, int target_width, int target_height) {
  if (target_width < 1 || target_height < 1) throw ShapeError("resample target dimensions must be >= 1");
  if (pred.empty()) throw ShapeError("cannot resample an empty depth map");
  if (pred.width() == target_width && pred.height() == target_height) return pred;

  DepthMap out(target_width, target_height);
  const double sx = static_cast<double>(pred.width()) / target_width;
  const double sy = static_cast<double>(pred.height()) / target_height;
  for (int y = 0; y < target_height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(pred.height() - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, pred.height() - 1);
    const double ty = fy - y0;
    for (int x = 0; x < target_width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(pred.width() - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, pred.width() - 1);
      const double tx = fx - x0;
      const std::array<std::pair<float, double>, 4> taps = {{
          {pred.at(x0, y0), (1.0 - tx) * (1.0 - ty)},
          {pred.at(x1, y0), tx * (1.0 - ty)},
          {pred.at(x0, y1), (1.0 - tx) * ty},
          {pred.at(x1, y1), tx * ty},
      }};
      double acc = 0.0;
      double weight = 0.0;
      for (const auto& [v, w] : taps) {
        if (!is_valid_depth(v) || w == 0.0) continue;
        acc += w * v;
        weight += w;
      }
      out.at(x, y) = weight > 0.0 ? static_cast<float>(acc / weight) : 0.0f;
    }
  }
  return out;
}

MetricRecord aggregate_frames(std::span<const MetricRecord> records) {
  if (records.empty()) throw DegenerateInputError("cannot aggregate an empty list of frame metrics");
  std::array<CompensatedSum, kNumMetrics> sums{};
  for (const auto& r : records) {
    for (std::size_t m = 0; m < kNumMetrics; ++m) sums[m].add(r.values[m]);
  }
  MetricRecord out;
  for (std::size_t m = 0; m < kNumMetrics; ++m) out.values[m] = sums[m].value() / static_cast<double>(records.size());
  return out;
}

}  // namespace endobench::depth
