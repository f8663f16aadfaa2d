#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "endobench/dataset.hpp"
#include "endobench/ders.hpp"
#include "endobench/depth_metrics.hpp"

namespace endobench::eval {

struct EvaluateConfig {
  std::filesystem::path pred_dir;        // <ctype>/<severity>/<frame_id>.{png,pfm}
  std::filesystem::path clean_pred_dir;  // <frame_id>.{png,pfm}
  std::vector<CorruptionType> types;
  std::vector<int> severities = {1, 2, 3, 4, 5};
  depth::EvalProtocol protocol;
  bool strict = false;  // a missing prediction aborts the run
  unsigned workers = 0;
};

// A prediction (or ground truth) that could not be used. severity 0 refers
// to the clean prediction; type is unset for per-frame problems.
struct PredictionException {
  std::string frame_id;
  std::optional<CorruptionType> type;
  int severity = 0;
  std::string reason;
};

struct FrameRecord {
  std::string frame_id;
  depth::MetricRecord metrics;
};

// Aggregate and per-frame records for one (type, severity) cell.
struct LevelResult {
  depth::MetricRecord aggregate;
  std::vector<FrameRecord> frames;  // manifest order
};

struct EvaluationResult {
  std::optional<LevelResult> clean;
  // levels[0] mirrors `clean`; a level is empty when no frame contributed.
  std::map<CorruptionType, std::array<std::optional<LevelResult>, 6>> tables;
  std::vector<PredictionException> exceptions;
};

// Locates `<stem>.png` or `<stem>.pfm` in dir, preferring png.
[[nodiscard]] std::optional<std::filesystem::path> find_prediction(const std::filesystem::path& dir,
                                                                   const std::string& frame_id);

// Metrics for every manifest frame with ground truth. Missing predictions are
// listed as exceptions (or thrown as IoError under `strict`); frames whose
// mask is empty are skipped with a warning.
[[nodiscard]] EvaluationResult evaluate(const dataset::DatasetManifest& manifest, const EvaluateConfig& config);

// Severity table for one type: header plus rows for the levels present.
[[nodiscard]] std::string render_level_table(const std::array<std::optional<LevelResult>, 6>& levels);

// `frame_id,abs_rel,...` dump for one level.
[[nodiscard]] std::string render_frame_dump(const LevelResult& level);

// `frame_id,ctype,severity,reason`
[[nodiscard]] std::string render_exceptions(const std::vector<PredictionException>& exceptions);

// Writes `<out>/<ctype>.csv`, `<out>/frames/clean.csv`,
// `<out>/frames/<ctype>/<severity>.csv` and `<out>/exceptions.csv`.
void write_evaluation(const EvaluationResult& result, const std::filesystem::path& out_dir);

struct ScoreResult {
  ders::BenchmarkSummary summary;
  std::vector<std::string> skipped;  // "<ctype>: reason"
};

// Reads every `<eval_dir>/<ctype>.csv` and scores it. Tables that are absent
// or incomplete are skipped with a warning. Throws DegenerateInputError when
// nothing can be scored.
[[nodiscard]] ScoreResult score_directory(const std::filesystem::path& eval_dir, const ders::DersWeights& weights);

// Writes `<out>/summary.json` and `<out>/ders.tsv`.
void write_score(const ders::BenchmarkSummary& summary, const std::filesystem::path& out_dir);

// Breakdown table in csv or tsv: corruption, E, A, R, ders, then a mean row.
[[nodiscard]] std::string render_breakdown(const ders::BenchmarkSummary& summary, char separator);

}  // namespace endobench::eval
