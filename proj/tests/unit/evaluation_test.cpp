#include <gtest/gtest.h>

#include "endobench/depth.hpp"
#include "endobench/error.hpp"
#include "endobench/evaluation.hpp"
#include "endobench/logging.hpp"
#include "endobench/synth.hpp"
#include "endobench/text_io.hpp"
#include "test_support.hpp"

namespace endobench::eval {
namespace {

namespace fs = std::filesystem;

const std::vector<CorruptionType> kTypes = {CorruptionType::kBrightness, CorruptionType::kZoomBlur};

struct Workspace {
  testing::TempDir tmp;
  dataset::DatasetManifest manifest = synth::write_dataset(tmp / "data", {.frames = 3, .width = 20, .height = 14});

  EvaluateConfig config(const std::string& model) const {
    EvaluateConfig c;
    c.pred_dir = tmp / model / "pred";
    c.clean_pred_dir = tmp / model / "clean";
    c.types = kTypes;
    c.workers = 2;
    return c;
  }
  void predict(const std::string& model, synth::Predictor p) const {
    synth::write_predictions(manifest, tmp / model, p, kTypes, {1, 2, 3, 4, 5});
  }
};

TEST(Evaluate, PerfectPredictionsGiveIdealRows) {
  Workspace s;
  // Copy ground truth into every prediction slot.
  fs::create_directories(s.tmp / "gt" / "clean");
  for (const auto& f : s.manifest.frames) {
    const auto gt = depth::read_depth(*f.gt_depth_path);
    depth::write_png16(s.tmp / "gt" / "clean" / (f.frame_id + ".png"), gt);
    for (auto t : kTypes) {
      for (int sev = 1; sev <= 5; ++sev) {
        const auto dir = s.tmp / "gt" / "pred" / std::string(to_string(t)) / std::to_string(sev);
        fs::create_directories(dir);
        depth::write_pfm(dir / (f.frame_id + ".pfm"), gt);
      }
    }
  }
  const auto r = evaluate(s.manifest, s.config("gt"));
  EXPECT_TRUE(r.exceptions.empty());
  for (const auto& [type, levels] : r.tables) {
    for (std::size_t j = 0; j < 6; ++j) {
      ASSERT_TRUE(levels[j].has_value());
      EXPECT_EQ(levels[j]->aggregate.values, (std::array<double, 7>{0, 0, 0, 0, 1, 1, 1}));
      EXPECT_EQ(levels[j]->frames.size(), 3u);
    }
  }
}

TEST(Evaluate, DegradingPredictorErrorsGrowWithSeverity) {
  Workspace s;
  s.predict("deg", synth::Predictor::kSeverityDegrading);
  const auto r = evaluate(s.manifest, s.config("deg"));
  for (const auto& [type, levels] : r.tables) {
    for (std::size_t j = 1; j < 6; ++j) {
      for (std::size_t m = 0; m < depth::kNumErrorMetrics; ++m) {
        EXPECT_GE(levels[j]->aggregate.values[m], levels[j - 1]->aggregate.values[m])
            << to_string(type) << " level " << j << " metric " << depth::kMetricNames[m];
      }
    }
  }
}

TEST(Evaluate, MissingSeverityDirectoryIsReported) {
  Workspace s;
  s.predict("inv", synth::Predictor::kSeverityInvariant);
  fs::remove_all(s.tmp / "inv" / "pred" / "zoom_blur" / "4");
  const auto r = evaluate(s.manifest, s.config("inv"));
  ASSERT_EQ(r.exceptions.size(), 1u);
  EXPECT_EQ(r.exceptions[0].type, CorruptionType::kZoomBlur);
  EXPECT_EQ(r.exceptions[0].severity, 4);
  EXPECT_FALSE(r.tables.at(CorruptionType::kZoomBlur)[4].has_value());
  EXPECT_NE(render_exceptions(r.exceptions).find("*,zoom_blur,4,"), std::string::npos);
}

TEST(Evaluate, MissingPredictionListedOrFatalUnderStrict) {
  Workspace s;
  s.predict("inv", synth::Predictor::kSeverityInvariant);
  fs::remove(s.tmp / "inv" / "pred" / "brightness" / "2" / "frame_001.png");
  const auto r = evaluate(s.manifest, s.config("inv"));
  ASSERT_EQ(r.exceptions.size(), 1u);
  EXPECT_EQ(r.exceptions[0].frame_id, "frame_001");
  EXPECT_EQ(r.tables.at(CorruptionType::kBrightness)[2]->frames.size(), 2u);
  auto strict = s.config("inv");
  strict.strict = true;
  EXPECT_THROW((void)evaluate(s.manifest, strict), IoError);
}

TEST(Evaluate, LowResolutionPredictionsAreResampled) {
  Workspace s;
  for (const auto& f : s.manifest.frames) {
    fs::create_directories(s.tmp / "lo" / "clean");
    depth::write_png16(s.tmp / "lo" / "clean" / (f.frame_id + ".png"), depth::DepthMap(10, 7, 60.0f));
  }
  auto c = s.config("lo");
  c.types = {};
  const auto r = evaluate(s.manifest, c);
  ASSERT_TRUE(r.clean.has_value());
  EXPECT_EQ(r.clean->frames.size(), 3u);
}

TEST(Evaluate, WorkerCountDoesNotChangeOutput) {
  Workspace s;
  s.predict("deg", synth::Predictor::kSeverityDegrading);
  auto one = s.config("deg");
  one.workers = 1;
  auto many = s.config("deg");
  many.workers = 8;
  const auto a = evaluate(s.manifest, one);
  const auto b = evaluate(s.manifest, many);
  for (auto t : kTypes) EXPECT_EQ(render_level_table(a.tables.at(t)), render_level_table(b.tables.at(t)));
}

TEST(Score, InvariantScoresFourAndDegradingScoresHigher) {
  Workspace s;
  s.predict("inv", synth::Predictor::kSeverityInvariant);
  s.predict("deg", synth::Predictor::kSeverityDegrading);
  write_evaluation(evaluate(s.manifest, s.config("inv")), s.tmp / "eval_inv");
  write_evaluation(evaluate(s.manifest, s.config("deg")), s.tmp / "eval_deg");
  const auto inv = score_directory(s.tmp / "eval_inv", {});
  const auto deg = score_directory(s.tmp / "eval_deg", {});
  for (const auto& [t, b] : inv.summary.per_corruption) EXPECT_DOUBLE_EQ(b.score, 4.0 / b.accuracy);
  EXPECT_EQ(inv.summary.per_corruption.size(), 2u);
  EXPECT_GT(deg.summary.mean_ders, inv.summary.mean_ders);
  EXPECT_TRUE(fs::exists(s.tmp / "eval_deg" / "frames" / "zoom_blur" / "5.csv"));
  EXPECT_TRUE(fs::exists(s.tmp / "eval_deg" / "frames" / "clean.csv"));
}

TEST(Score, IncompleteTableSkippedWithWarning) {
  Workspace s;
  s.predict("inv", synth::Predictor::kSeverityInvariant);
  fs::remove_all(s.tmp / "inv" / "pred" / "zoom_blur" / "3");
  write_evaluation(evaluate(s.manifest, s.config("inv")), s.tmp / "eval");
  std::vector<std::string> warnings;
  auto prev = set_log_sink([&](LogLevel l, std::string_view m) {
    if (l == LogLevel::kWarning) warnings.emplace_back(m);
  });
  const auto r = score_directory(s.tmp / "eval", {});
  set_log_sink(prev);
  EXPECT_EQ(r.summary.per_corruption.size(), 1u);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("zoom_blur"), std::string::npos);
}

TEST(Score, NothingToScoreIsAnError) {
  testing::TempDir tmp;
  EXPECT_THROW((void)score_directory(tmp.path(), {}), DegenerateInputError);
  EXPECT_THROW((void)score_directory(tmp / "absent", {}), IoError);
}

}  // namespace
}  // namespace endobench::eval
