#include "endobench/evaluation.hpp"

#include "endobench/depth.hpp"
#include "endobench/error.hpp"
#include "endobench/format.hpp"
#include "endobench/logging.hpp"
#include "endobench/text_io.hpp"
#include "parallel.hpp"

namespace endobench::eval {
namespace fs = std::filesystem;
namespace {

using depth::MetricRecord;

std::string metric_cells(const MetricRecord& r) {
  std::string out;
  for (double v : r.values) out += "," + format_metric(v);
  return out;
}

std::optional<LevelResult> collect(const std::vector<std::string>& ids, const std::vector<std::optional<MetricRecord>>& slots) {
  LevelResult level;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) level.frames.push_back({ids[i], *slots[i]});
  }
  if (level.frames.empty()) return std::nullopt;
  std::vector<MetricRecord> records;
  records.reserve(level.frames.size());
  for (const auto& f : level.frames) records.push_back(f.metrics);
  level.aggregate = depth::aggregate_frames(records);
  return level;
}

struct Cell {
  CorruptionType type;
  int severity;
  fs::path dir;
};

}  // namespace

std::optional<fs::path> find_prediction(const fs::path& dir, const std::string& frame_id) {
  for (const char* ext : {".png", ".pfm"}) {
    auto p = dir / (frame_id + ext);
    if (fs::is_regular_file(p)) return p;
  }
  return std::nullopt;
}

EvaluationResult evaluate(const dataset::DatasetManifest& manifest, const EvaluateConfig& config) {
  config.protocol.validate();
  EvaluationResult result;
  auto report = [&](PredictionException e) {
    if (config.strict) {
      std::string where = e.type ? std::string(to_string(*e.type)) + "/" + std::to_string(e.severity) : "clean";
      throw IoError("strict mode: " + e.frame_id + " (" + where + "): " + e.reason);
    }
    return e;
  };

  std::vector<Cell> cells;
  for (auto type : config.types) {
    for (int s : config.severities) {
      const auto dir = config.pred_dir / std::string(to_string(type)) / std::to_string(s);
      if (!fs::is_directory(dir)) {
        result.exceptions.push_back(report({"*", type, s, "prediction directory missing: " + dir.string()}));
        continue;
      }
      cells.push_back({type, s, dir});
    }
  }

  const std::size_t n = manifest.frames.size();
  std::vector<std::string> ids(n);
  std::vector<std::optional<MetricRecord>> clean(n);
  std::vector<std::vector<std::optional<MetricRecord>>> corrupted(cells.size(), std::vector<std::optional<MetricRecord>>(n));
  std::vector<std::vector<PredictionException>> frame_exceptions(n);

  detail::parallel_for(n, detail::resolve_workers(config.workers), [&](std::size_t i) {
    const auto& frame = manifest.frames[i];
    ids[i] = frame.frame_id;
    auto& problems = frame_exceptions[i];
    if (!frame.gt_depth_path) {
      problems.push_back(report({frame.frame_id, std::nullopt, 0, "no ground-truth depth in manifest"}));
      return;
    }
    const auto gt = depth::read_depth(*frame.gt_depth_path);
    auto measure = [&](const std::optional<fs::path>& path) -> std::optional<MetricRecord> {
      auto pred = depth::read_depth(*path);
      if (!pred.same_shape(gt)) pred = depth::resample_pred(pred, gt.width(), gt.height());
      try {
        return depth::frame_metrics(pred, gt, config.protocol);
      } catch (const DegenerateInputError& e) {
        log_warning("skipping " + path->string() + ": " + e.what());
        return std::nullopt;
      }
    };

    if (auto path = find_prediction(config.clean_pred_dir, frame.frame_id)) {
      clean[i] = measure(path);
    } else {
      problems.push_back(report({frame.frame_id, std::nullopt, 0, "missing clean prediction"}));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (auto path = find_prediction(cells[c].dir, frame.frame_id)) {
        corrupted[c][i] = measure(path);
      } else {
        problems.push_back(report({frame.frame_id, cells[c].type, cells[c].severity, "missing prediction"}));
      }
    }
  });

  for (auto& problems : frame_exceptions) {
    for (auto& e : problems) result.exceptions.push_back(std::move(e));
  }
  result.clean = collect(ids, clean);
  for (auto type : config.types) result.tables[type][0] = result.clean;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    result.tables[cells[c].type][static_cast<std::size_t>(cells[c].severity)] = collect(ids, corrupted[c]);
  }
  return result;
}

std::string render_level_table(const std::array<std::optional<LevelResult>, 6>& levels) {
  std::string out(ders::kTableHeader);
  out += '\n';
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if (levels[j]) out += std::to_string(j) + metric_cells(levels[j]->aggregate) + "\n";
  }
  return out;
}

std::string render_frame_dump(const LevelResult& level) {
  std::string out = "frame_id";
  for (auto name : depth::kMetricNames) out += "," + std::string(name);
  out += '\n';
  for (const auto& f : level.frames) out += f.frame_id + metric_cells(f.metrics) + "\n";
  return out;
}

std::string render_exceptions(const std::vector<PredictionException>& exceptions) {
  std::string out = "frame_id,ctype,severity,reason\n";
  for (const auto& e : exceptions) {
    std::string reason = e.reason;
    for (auto& ch : reason) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out += e.frame_id + "," + (e.type ? std::string(to_string(*e.type)) : "clean") + "," + std::to_string(e.severity) +
           "," + reason + "\n";
  }
  return out;
}

void write_evaluation(const EvaluationResult& result, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir / "frames", ec);
  if (ec) throw IoError("cannot create " + (out_dir / "frames").string() + ": " + ec.message());
  for (const auto& [type, levels] : result.tables) {
    const std::string tag(to_string(type));
    write_text_file(out_dir / (tag + ".csv"), render_level_table(levels));
    for (std::size_t j = 1; j < levels.size(); ++j) {
      if (!levels[j]) continue;
      fs::create_directories(out_dir / "frames" / tag, ec);
      if (ec) throw IoError("cannot create " + (out_dir / "frames" / tag).string() + ": " + ec.message());
      write_text_file(out_dir / "frames" / tag / (std::to_string(j) + ".csv"), render_frame_dump(*levels[j]));
    }
  }
  if (result.clean) write_text_file(out_dir / "frames" / "clean.csv", render_frame_dump(*result.clean));
  write_text_file(out_dir / "exceptions.csv", render_exceptions(result.exceptions));
}

ScoreResult score_directory(const fs::path& eval_dir, const ders::DersWeights& weights) {
  if (!fs::is_directory(eval_dir)) throw IoError("evaluation directory not found: " + eval_dir.string());
  weights.validate();
  ScoreResult out;
  std::map<CorruptionType, ders::SeveritySeries> tables;
  for (auto type : all_corruption_types()) {
    const std::string tag(to_string(type));
    const auto path = eval_dir / (tag + ".csv");
    if (!fs::exists(path)) {
      out.skipped.push_back(tag + ": no table");
      continue;
    }
    try {
      tables[type] = ders::load_table(path);
    } catch (const ParseError& e) {
      log_warning("skipping " + tag + ": " + e.what());
      out.skipped.push_back(tag + ": " + e.what());
    }
  }
  if (tables.empty()) throw DegenerateInputError("no complete evaluation tables in " + eval_dir.string());
  out.summary = ders::summarize(tables, weights);
  return out;
}

void write_score(const ders::BenchmarkSummary& summary, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  write_text_file(out_dir / "summary.json", ders::summary_to_json(summary));
  write_text_file(out_dir / "ders.tsv", ders::summary_to_tsv(summary));
}

std::string render_breakdown(const ders::BenchmarkSummary& summary, char separator) {
  const std::string sep(1, separator);
  std::string out = "corruption" + sep + "E" + sep + "A" + sep + "R" + sep + "ders\n";
  for (const auto& [type, b] : summary.per_corruption) {
    out += std::string(to_string(type)) + sep + format_metric(b.error) + sep + format_metric(b.accuracy) + sep +
           format_metric(b.robustness) + sep + format_score(b.score) + "\n";
  }
  out += "mean" + sep + sep + sep + sep + format_score(summary.mean_ders) + "\n";
  return out;
}

}  // namespace endobench::eval
