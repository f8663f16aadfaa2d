#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "endobench/corruption_type.hpp"

namespace endobench {

enum class Monotonicity { kNonDecreasing, kNonIncreasing };

// Describes which parameters a corruption type reads and which of them is
// its magnitude knob.
struct ParamSchema {
  std::vector<std::string_view> required;
  std::string_view magnitude;
  Monotonicity direction = Monotonicity::kNonDecreasing;
};

[[nodiscard]] const ParamSchema& param_schema(CorruptionType type) noexcept;

// Per-(type, severity 1..5) parameter vectors. Severity 0 never has a row.
//
// Config layout (JSON): {"schema_version": 1, "version": "...",
//   "<ctype>": {"1": {"<param>": value, ...}, ..., "5": {...}}, ...}
class SeverityParamTable {
 public:
  static constexpr int kSchemaVersion = 1;

  SeverityParamTable() = default;

  // Schedules mirroring the reference corruption library, with reduced
  // spatter intensity.
  [[nodiscard]] static SeverityParamTable defaults();
  [[nodiscard]] static SeverityParamTable from_json_text(std::string_view text);
  [[nodiscard]] static SeverityParamTable load(const std::filesystem::path& path);

  [[nodiscard]] std::string to_json_text() const;

  // Throws ConfigError naming (type, severity, name) when absent.
  [[nodiscard]] double get(CorruptionType type, int severity, std::string_view name) const;
  [[nodiscard]] bool has_row(CorruptionType type, int severity) const;
  void set(CorruptionType type, int severity, std::string_view name, double value);
  void erase_row(CorruptionType type, int severity);

  // Every (type, severity) row present with its required parameters, and
  // each magnitude parameter monotone in severity. Throws ConfigError.
  void validate() const;

  [[nodiscard]] const std::string& version() const noexcept { return version_; }
  void set_version(std::string version) { version_ = std::move(version); }

 private:
  using Row = std::map<std::string, double, std::less<>>;
  [[nodiscard]] const Row& row(CorruptionType type, int severity) const;

  std::string version_;
  std::array<std::array<Row, 5>, kNumCorruptionTypes> rows_{};
};

}  // namespace endobench
