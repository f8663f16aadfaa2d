#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "endobench/depth_metrics.hpp"
#include "endobench/error.hpp"
#include "endobench/text_io.hpp"

namespace endobench::depth {
namespace {

EvalProtocol raw_protocol() {
  EvalProtocol p;
  p.scaling = Scaling::kNone;
  p.clamp = ClampOrder::kNever;
  p.min_depth = 1e-6;
  p.max_depth = 1e9;
  return p;
}

DepthMap scaled(const DepthMap& m, double c) {
  DepthMap out = m;
  for (auto& v : out.values()) v = static_cast<float>(v * c);
  return out;
}

struct Pair {
  DepthMap gt;
  DepthMap pred;
};

Pair random_pair(std::mt19937& rng, int w = 16, int h = 20) {
  std::uniform_real_distribution<float> depth(1.0f, 100.0f);
  std::uniform_real_distribution<float> factor(0.5f, 2.0f);
  Pair p{DepthMap(w, h), DepthMap(w, h)};
  for (std::size_t i = 0; i < p.gt.size(); ++i) {
    p.gt.values()[i] = depth(rng);
    p.pred.values()[i] = p.gt.values()[i] * factor(rng);
  }
  return p;
}

void expect_rel(double got, double want, double tol, const char* what) {
  EXPECT_LE(std::abs(got - want), tol * std::max(std::abs(want), 1e-300)) << what << ": " << got << " vs " << want;
}

TEST(ValidMask, Cases) {
  const EvalProtocol p;
  const auto all = valid_mask(DepthMap(3, 2, 5.0f), p);
  EXPECT_TRUE(std::all_of(all.begin(), all.end(), [](auto v) { return v == 1; }));
  const auto none = valid_mask(DepthMap(3, 2, 0.0f), p);
  EXPECT_TRUE(std::all_of(none.begin(), none.end(), [](auto v) { return v == 0; }));
  DepthMap one(3, 2, 5.0f);
  one.at(2, 1) = 151.0f;
  one.at(0, 0) = std::nanf("");
  const auto m = valid_mask(one, p);
  EXPECT_EQ(std::count(m.begin(), m.end(), 0), 2);
  EXPECT_EQ(m[5], 0);
  EXPECT_EQ(m[0], 0);
}

TEST(MedianScale, IdentityAndHalf) {
  DepthMap gt(2, 2, std::vector<float>{1.0f, 2.0f, 4.0f, 8.0f});
  const Mask mask(4, 1);
  const auto same = median_scale(gt, gt, mask);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(same.values()[i], gt.values()[i]);
  const auto fixed = median_scale(scaled(gt, 0.5), gt, mask);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(fixed.values()[i], gt.values()[i]);
}

TEST(MedianScale, RandomMapsGetEqualMedians) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<float> d(0.5f, 50.0f);
  auto sort_median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  };
  for (int trial = 0; trial < 50; ++trial) {
    DepthMap pred(4, 4), gt(4, 4);
    for (auto& v : pred.values()) v = d(rng);
    for (auto& v : gt.values()) v = d(rng);
    Mask mask(16, 1);
    mask[trial % 16] = 0;
    const auto out = median_scale(pred, gt, mask);
    std::vector<double> a, b;
    for (std::size_t i = 0; i < 16; ++i) {
      if (!mask[i]) continue;
      a.push_back(out.values()[i]);
      b.push_back(gt.values()[i]);
    }
    expect_rel(sort_median(a), sort_median(b), 1e-6, "median");
  }
}

TEST(MedianScale, Errors) {
  const DepthMap gt(2, 2, 3.0f);
  EXPECT_THROW((void)median_scale(gt, gt, Mask(4, 0)), DegenerateInputError);
  EXPECT_THROW((void)median_scale(DepthMap(2, 2, 0.0f), gt, Mask(4, 1)), DegenerateInputError);
}

TEST(FrameMetrics, PerfectPrediction) {
  const DepthMap gt(8, 6, 42.0f);
  const auto r = frame_metrics(gt, gt, EvalProtocol{});
  for (std::size_t i = 0; i < kNumErrorMetrics; ++i) EXPECT_EQ(r.values[i], 0.0);
  EXPECT_EQ(r.a1(), 1.0);
  EXPECT_EQ(r.a2(), 1.0);
  EXPECT_EQ(r.a3(), 1.0);
}

TEST(FrameMetrics, ThirtyPercentOver) {
  const DepthMap gt(8, 6, 20.0f);
  const auto r = frame_metrics(scaled(gt, 1.3), gt, raw_protocol());
  EXPECT_NEAR(r.abs_rel(), 0.3, 1e-6);
  EXPECT_EQ(r.a1(), 0.0);
  EXPECT_EQ(r.a2(), 1.0);
  EXPECT_EQ(r.a3(), 1.0);
}

TEST(FrameMetrics, ConstantOffset) {
  const DepthMap gt(8, 6, 10.0f);
  const auto r = frame_metrics(DepthMap(8, 6, 12.0f), gt, raw_protocol());
  EXPECT_DOUBLE_EQ(r.rmse(), 2.0);
  EXPECT_DOUBLE_EQ(r.abs_rel(), 0.2);
  EXPECT_DOUBLE_EQ(r.sq_rel(), 0.4);
  EXPECT_NEAR(r.log_rmse(), std::log(1.2), 1e-15);
}

TEST(FrameMetrics, Errors) {
  const DepthMap gt(4, 4, 5.0f);
  EXPECT_THROW((void)frame_metrics(DepthMap(4, 5, 5.0f), gt, EvalProtocol{}), ShapeError);
  EXPECT_THROW((void)frame_metrics(gt, DepthMap(4, 4, 0.0f), EvalProtocol{}), DegenerateInputError);
}

TEST(FrameMetrics, ClampOrderMatters) {
  // After median scaling to gt the prediction is in range; clamping first
  // would pin the large values and change the result.
  DepthMap gt(2, 2, std::vector<float>{10.0f, 20.0f, 30.0f, 40.0f});
  const auto pred = scaled(gt, 10.0);  // 100..400, partly above max_depth
  EvalProtocol after;
  EvalProtocol before;
  before.clamp = ClampOrder::kBeforeScaling;
  EXPECT_EQ(frame_metrics(pred, gt, after).abs_rel(), 0.0);
  EXPECT_GT(frame_metrics(pred, gt, before).abs_rel(), 0.0);
}

TEST(FrameMetrics, NestedThresholdsOnRandomMaps) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_pair(rng);
    const auto r = frame_metrics(p.pred, p.gt, EvalProtocol{});
    EXPECT_LE(r.a1(), r.a2());
    EXPECT_LE(r.a2(), r.a3());
    for (std::size_t m = 0; m < kNumMetrics; ++m) EXPECT_GE(r.values[m], 0.0);
    EXPECT_LE(r.a3(), 1.0);
  }
}

TEST(FrameMetrics, JointScaleInvariance) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> cdist(0.1, 10.0);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_pair(rng);
    const double c = cdist(rng);
    const auto base = frame_metrics(p.pred, p.gt, raw_protocol());
    const auto s = frame_metrics(scaled(p.pred, c), scaled(p.gt, c), raw_protocol());
    expect_rel(s.abs_rel(), base.abs_rel(), 1e-6, "abs_rel");
    expect_rel(s.log_rmse(), base.log_rmse(), 1e-6, "log_rmse");
    expect_rel(s.rmse(), c * base.rmse(), 1e-6, "rmse");
    expect_rel(s.sq_rel(), c * base.sq_rel(), 1e-6, "sq_rel");
    EXPECT_EQ(s.a1(), base.a1());
    EXPECT_EQ(s.a2(), base.a2());
    EXPECT_EQ(s.a3(), base.a3());
  }
}

TEST(FrameMetrics, MedianScalingGaugeInvariance) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> cdist(0.01, 100.0);
  EvalProtocol p;
  p.max_depth = 1e6;
  for (int i = 0; i < 100; ++i) {
    const auto pair = random_pair(rng);
    const auto base = frame_metrics(pair.pred, pair.gt, p);
    const auto s = frame_metrics(scaled(pair.pred, cdist(rng)), pair.gt, p);
    for (std::size_t m = 0; m < kNumMetrics; ++m) expect_rel(s.values[m], base.values[m], 1e-6, "metric");
  }
}

TEST(FrameMetrics, InvalidGtPixelChangesNothing) {
  std::mt19937 rng(41);
  auto p = random_pair(rng, 16, 20);
  const auto base = frame_metrics(p.pred, p.gt, EvalProtocol{});
  // Grow both maps by one column whose gt is invalid.
  DepthMap gt(17, 20), pred(17, 20);
  for (int y = 0; y < 20; ++y) {
    for (int x = 0; x < 16; ++x) {
      gt.at(x, y) = p.gt.at(x, y);
      pred.at(x, y) = p.pred.at(x, y);
    }
    gt.at(16, y) = 0.0f;
    pred.at(16, y) = 77.0f;
  }
  const auto grown = frame_metrics(pred, gt, EvalProtocol{});
  for (std::size_t m = 0; m < kNumMetrics; ++m) EXPECT_EQ(grown.values[m], base.values[m]);
}

TEST(Resample, SameSizeIsIdentity) {
  const DepthMap m(3, 2, std::vector<float>{1, 2, 3, 4, 5, 6});
  const auto out = resample_pred(m, 3, 2);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(out.values()[i], m.values()[i]);
}

TEST(Resample, ConstantStaysConstant) {
  const auto out = resample_pred(DepthMap(5, 4, 7.5f), 10, 8);
  for (float v : out.values()) EXPECT_FLOAT_EQ(v, 7.5f);
}

TEST(Resample, HandBilinearWeights) {
  const DepthMap m(2, 1, std::vector<float>{1.0f, 3.0f});
  const auto three = resample_pred(m, 3, 1);
  EXPECT_FLOAT_EQ(three.at(1, 0), 2.0f);
  const auto four = resample_pred(m, 4, 1);
  EXPECT_FLOAT_EQ(four.at(0, 0), 1.0f);
  EXPECT_FLOAT_EQ(four.at(1, 0), 1.5f);
  EXPECT_FLOAT_EQ(four.at(2, 0), 2.5f);
  EXPECT_FLOAT_EQ(four.at(3, 0), 3.0f);
  EXPECT_FLOAT_EQ(0.5f * (four.at(1, 0) + four.at(2, 0)), 2.0f);
}

TEST(Resample, InvalidCellsCarryNoWeight) {
  const DepthMap m(2, 1, std::vector<float>{0.0f, 3.0f});
  EXPECT_FLOAT_EQ(resample_pred(m, 4, 1).at(1, 0), 3.0f);
  EXPECT_EQ(resample_pred(DepthMap(2, 2, 0.0f), 4, 4).at(1, 1), 0.0f);
}

TEST(Resample, ZeroTargetRejected) {
  EXPECT_THROW((void)resample_pred(DepthMap(2, 2, 1.0f), 0, 3), ShapeError);
}

TEST(Aggregate, SingleAndPair) {
  MetricRecord a, b;
  a.values.fill(0.1);
  b.values.fill(0.3);
  EXPECT_EQ(aggregate_frames(std::vector<MetricRecord>{a}).values, a.values);
  const auto mean = aggregate_frames(std::vector<MetricRecord>{a, b});
  for (double v : mean.values) EXPECT_DOUBLE_EQ(v, 0.2);
  EXPECT_THROW((void)aggregate_frames(std::vector<MetricRecord>{}), DegenerateInputError);
}

TEST(Aggregate, MatchesExtendedPrecisionReference) {
  std::mt19937_64 rng(551);
  std::uniform_real_distribution<double> mag(-8.0, 3.0);
  std::vector<MetricRecord> records(551);
  for (auto& r : records) {
    for (auto& v : r.values) v = std::pow(10.0, mag(rng));
  }
  const auto got = aggregate_frames(records);
  for (std::size_t m = 0; m < kNumMetrics; ++m) {
    long double ref = 0.0L;
    for (const auto& r : records) ref += r.values[m];
    ref /= records.size();
    EXPECT_LE(std::abs(static_cast<long double>(got.values[m]) - ref) / ref, 1e-12L);
  }
}

TEST(Protocol, JsonOverridesAndValidation) {
  const auto p = EvalProtocol::from_json_text(R"({"max_depth": 80, "scaling": "none", "clamp": "before"})");
  EXPECT_EQ(p.max_depth, 80.0);
  EXPECT_EQ(p.min_depth, 0.1);
  EXPECT_EQ(p.scaling, Scaling::kNone);
  EXPECT_EQ(p.clamp, ClampOrder::kBeforeScaling);
  EXPECT_THROW((void)EvalProtocol::from_json_text(R"({"min_depth": 5, "max_depth": 1})"), InvalidSpecError);
  EXPECT_THROW((void)EvalProtocol::from_json_text(R"({"threshold_base": 1.0})"), InvalidSpecError);
  EXPECT_THROW((void)EvalProtocol::from_json_text(R"({"scaling": "mean"})"), ParseError);
  EXPECT_THROW((void)EvalProtocol::from_json_text(R"({"unknown": 1})"), ParseError);
}

}  // namespace
}  // namespace endobench::depth

namespace endobench::depth {
namespace {

TEST(ProtocolFile, BundledExampleIsTheDefault) {
  EXPECT_EQ(EvalProtocol::from_json_text(read_text_file(ENDOBENCH_CONFIG_DIR "/protocol.json")), EvalProtocol{});
}

}  // namespace
}  // namespace endobench::depth
