#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "endobench/corruption_type.hpp"
#include "endobench/depth_metrics.hpp"

namespace endobench::ders {

using depth::Metric;
using depth::MetricRecord;
using depth::kNumErrorMetrics;
using depth::kNumMetrics;

inline constexpr std::size_t kNumLevels = 6;      // column 0 is clean
inline constexpr std::size_t kCorruptedLevels = 5;

// Seven metrics (rows, fixed order) by six severity levels (columns).
struct SeveritySeries {
  std::array<std::array<double, kNumLevels>, kNumMetrics> values{};

  [[nodiscard]] double at(Metric m, std::size_t level) const { return values[static_cast<std::size_t>(m)][level]; }
  double& at(Metric m, std::size_t level) { return values[static_cast<std::size_t>(m)][level]; }

  [[nodiscard]] MetricRecord column(std::size_t level) const;
  void set_column(std::size_t level, const MetricRecord& record);

  // Every column equal to record.
  [[nodiscard]] static SeveritySeries constant(const MetricRecord& record);

  // Throws InvalidSpecError for negative/non-finite errors or accuracies
  // outside [0, 1].
  void validate() const;

  friend bool operator==(const SeveritySeries&, const SeveritySeries&) = default;
};

enum class RobustnessMode {
  // Population standard deviation of each metric over severities 1..5.
  kLevelSpread,
  // Root-mean-square deviation of severities 1..5 from the clean value.
  kCleanDeviation,
};

struct DersWeights {
  std::array<double, 3> accuracy = {0.5, 0.3, 0.2};
  double lambda = 1.0;
  double epsilon = 1e-9;
  RobustnessMode robustness = RobustnessMode::kLevelSpread;
  // Divide each metric's spread by max(|clean|, epsilon) before averaging.
  bool normalize_robustness = false;

  // Throws InvalidSpecError unless W >= 0, lambda >= 0, epsilon > 0.
  void validate() const;

  // Fields: "W" (3 numbers), "lambda", "epsilon",
  // "robustness_mode" ("level_spread" | "clean_deviation"), "normalize_robustness".
  [[nodiscard]] static DersWeights from_json_text(std::string_view text);

  friend bool operator==(const DersWeights&, const DersWeights&) = default;
};

[[nodiscard]] std::string_view to_string(RobustnessMode mode) noexcept;

struct DersBreakdown {
  double error = 0.0;
  double accuracy = 0.0;
  double robustness = 0.0;
  double score = 0.0;
};

[[nodiscard]] double error_component(const SeveritySeries& series, const DersWeights& weights = {});
[[nodiscard]] double accuracy_component(const SeveritySeries& series, const DersWeights& weights = {});
[[nodiscard]] double robustness_component(const SeveritySeries& series, const DersWeights& weights = {});

// Throws DegenerateInputError when A is 0.
[[nodiscard]] DersBreakdown ders(const SeveritySeries& series, const DersWeights& weights = {});

// Arithmetic mean of the present scores. Throws DegenerateInputError when empty.
[[nodiscard]] double mean_ders(const std::map<CorruptionType, double>& scores);

struct BenchmarkSummary {
  std::map<CorruptionType, DersBreakdown> per_corruption;
  double mean_ders = 0.0;
};

[[nodiscard]] BenchmarkSummary summarize(const std::map<CorruptionType, SeveritySeries>& series,
                                         const DersWeights& weights = {});

// `{"corruptions": [{corruption, E, A, R, ders}...], "mean_ders": x}` with
// sorted keys; components at 6 significant digits, scores at 2 decimals.
[[nodiscard]] std::string summary_to_json(const BenchmarkSummary& summary);

// Two columns, `corruption<TAB>ders`, taxonomy order.
[[nodiscard]] std::string summary_to_tsv(const BenchmarkSummary& summary);

// A severity table as CSV: optional `# key: value` comment lines, the header
// `severity,abs_rel,sq_rel,rmse,log_rmse,a1,a2,a3`, and one row per
// severity 0..5 (any order, each exactly once).
struct TableBlock {
  SeveritySeries series;
  std::map<std::string, std::string> meta;
};

// Throws ParseError for structural problems and InvalidSpecError for values
// violating the series invariants.
[[nodiscard]] TableBlock parse_table_block(std::string_view csv);
[[nodiscard]] SeveritySeries from_table(std::string_view csv);
[[nodiscard]] SeveritySeries load_table(const std::filesystem::path& path);

// Header plus six rows, 6 significant digits.
[[nodiscard]] std::string emit_table(const SeveritySeries& series);

inline constexpr std::string_view kTableHeader = "severity,abs_rel,sq_rel,rmse,log_rmse,a1,a2,a3";

}  // namespace endobench::ders
