#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "endobench/corruption_type.hpp"
#include "endobench/ders.hpp"

namespace endobench::paper {

// One reference block: a model's severity table for one corruption.
struct Block {
  std::string model;         // directory key, e.g. "monodepth2"
  std::string display_name;  // "# model:" comment
  CorruptionType type = CorruptionType::kBrightness;
  ders::SeveritySeries series;
  double printed_ders = 0.0;
};

struct Erratum {
  std::string model;
  CorruptionType type = CorruptionType::kBrightness;
  double printed_ders = 0.0;
  double corrected_ders = 0.0;
  std::string note;
};

struct Fixtures {
  std::filesystem::path dir;
  std::vector<Block> blocks;  // sorted by (model, taxonomy order)
  std::map<std::string, double> reported_means;
  std::vector<Erratum> errata;

  [[nodiscard]] std::vector<std::string> models() const;
  [[nodiscard]] const Block& block(const std::string& model, CorruptionType type) const;
};

// ENDOBENCH_FIXTURES when set, otherwise the bundled directory.
[[nodiscard]] std::filesystem::path default_fixtures_dir();

// Reads every `<model>/<corruption>.csv` plus errata.json. Throws IoError
// naming the path when the directory is missing.
[[nodiscard]] Fixtures load_fixtures(const std::filesystem::path& dir);

struct VerifyOptions {
  double tolerance = 0.1;
  bool apply_errata = false;
  ders::DersWeights weights;
};

struct VerifyRow {
  std::string model;
  CorruptionType type = CorruptionType::kBrightness;
  ders::DersBreakdown computed;
  double printed = 0.0;
  double reference = 0.0;  // printed, or the corrected value under errata
  bool corrected = false;
  double delta = 0.0;  // computed - reference
  bool pass = false;
};

struct ModelMean {
  std::string model;
  double computed_mean = 0.0;
  double printed_mean = 0.0;   // mean of the scores as printed
  std::optional<double> reported_mean;  // the prose value, if any
  // Set when the printed mean and the prose mean differ by more
  // than rounding allows (0.01).
  bool flagged = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  std::vector<ModelMean> means;
  double tolerance = 0.0;
  bool errata_applied = false;

  [[nodiscard]] std::size_t passed() const;
  [[nodiscard]] bool all_pass() const { return passed() == rows.size(); }
};

[[nodiscard]] VerifyReport verify(const Fixtures& fixtures, const VerifyOptions& options);

// Human-readable table, one line per block, then the per-model means.
[[nodiscard]] std::string render_report(const VerifyReport& report);

}  // namespace endobench::paper
