#include "endobench/severity_params.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "endobench/error.hpp"

namespace endobench {
namespace {

using nlohmann::json;

std::string row_name(CorruptionType type, int severity) {
  return std::string(to_string(type)) + "." + std::to_string(severity);
}

void check_severity(int severity) {
  if (severity < 1 || severity > 5) {
    throw ConfigError("parameter rows exist for severities 1..5 only, got " + std::to_string(severity));
  }
}

struct Schedule {
  CorruptionType type;
  std::string_view name;
  std::array<double, 5> values;
};

// Reference-library schedules. Spatter keeps the library's liquid layer but
// scales occlusion opacity by density_scale to reduce its intensity.
const std::vector<Schedule>& default_schedules() {
  static const std::vector<Schedule> kSchedules = {
      {CorruptionType::kBrightness, "shift", {0.1, 0.2, 0.3, 0.4, 0.5}},
      {CorruptionType::kDark, "gain", {0.75, 0.6, 0.5, 0.4, 0.3}},
      {CorruptionType::kDark, "gamma", {1.1, 1.2, 1.3, 1.4, 1.5}},
      {CorruptionType::kContrast, "factor", {0.4, 0.3, 0.2, 0.1, 0.05}},
      {CorruptionType::kDefocusBlur, "radius", {3, 4, 6, 8, 10}},
      {CorruptionType::kDefocusBlur, "alias_sigma", {0.1, 0.5, 0.5, 0.5, 0.5}},
      {CorruptionType::kMotionBlur, "radius", {10, 15, 15, 15, 20}},
      {CorruptionType::kMotionBlur, "sigma", {3, 5, 8, 12, 15}},
      {CorruptionType::kZoomBlur, "max_zoom", {1.10, 1.15, 1.20, 1.24, 1.30}},
      {CorruptionType::kZoomBlur, "step", {0.01, 0.01, 0.02, 0.02, 0.03}},
      {CorruptionType::kGaussianBlur, "sigma", {1, 2, 3, 4, 6}},
      {CorruptionType::kSmoke, "strength", {1.5, 2.0, 2.5, 2.75, 3.0}},
      {CorruptionType::kSmoke, "decay", {2.0, 2.0, 2.0, 2.0, 2.0}},
      {CorruptionType::kSpatter, "loc", {0.65, 0.65, 0.65, 0.65, 0.67}},
      {CorruptionType::kSpatter, "scale", {0.3, 0.3, 0.3, 0.3, 0.4}},
      {CorruptionType::kSpatter, "sigma", {4, 3, 2, 1, 1}},
      {CorruptionType::kSpatter, "threshold", {0.69, 0.68, 0.68, 0.65, 0.65}},
      {CorruptionType::kSpatter, "intensity", {0.6, 0.6, 0.6, 1.0, 1.0}},
      {CorruptionType::kSpatter, "mud", {0, 0, 0, 1, 1}},
      {CorruptionType::kSpatter, "density_scale", {0.75, 0.75, 0.75, 0.75, 0.75}},
      {CorruptionType::kGaussianNoise, "sigma", {0.08, 0.12, 0.18, 0.26, 0.38}},
      {CorruptionType::kImpulseNoise, "amount", {0.03, 0.06, 0.09, 0.17, 0.27}},
      {CorruptionType::kShotNoise, "photons", {60, 25, 12, 5, 3}},
      {CorruptionType::kIsoNoise, "photons", {100, 50, 25, 12, 6}},
      {CorruptionType::kIsoNoise, "chroma_sigma", {0.02, 0.04, 0.06, 0.08, 0.10}},
      {CorruptionType::kJpegCompression, "quality", {25, 18, 15, 10, 7}},
      {CorruptionType::kPixelate, "scale", {0.6, 0.5, 0.4, 0.3, 0.25}},
      {CorruptionType::kColorQuant, "bits", {5, 4, 3, 2, 1}},
  };
  return kSchedules;
}

}  // namespace

const ParamSchema& param_schema(CorruptionType type) noexcept {
  using enum Monotonicity;
  static const std::array<ParamSchema, kNumCorruptionTypes> kSchemas = {{
      {{"shift"}, "shift", kNonDecreasing},
      {{"gain", "gamma"}, "gamma", kNonDecreasing},
      {{"factor"}, "factor", kNonIncreasing},
      {{"radius", "alias_sigma"}, "radius", kNonDecreasing},
      {{"radius", "sigma"}, "sigma", kNonDecreasing},
      {{"max_zoom", "step"}, "max_zoom", kNonDecreasing},
      {{"sigma"}, "sigma", kNonDecreasing},
      {{"strength", "decay"}, "strength", kNonDecreasing},
      {{"loc", "scale", "sigma", "threshold", "intensity", "mud", "density_scale"}, "threshold", kNonIncreasing},
      {{"sigma"}, "sigma", kNonDecreasing},
      {{"amount"}, "amount", kNonDecreasing},
      {{"photons"}, "photons", kNonIncreasing},
      {{"photons", "chroma_sigma"}, "chroma_sigma", kNonDecreasing},
      {{"quality"}, "quality", kNonIncreasing},
      {{"scale"}, "scale", kNonIncreasing},
      {{"bits"}, "bits", kNonIncreasing},
  }};
  return kSchemas[static_cast<std::size_t>(type)];
}

SeverityParamTable SeverityParamTable::defaults() {
  SeverityParamTable table;
  table.version_ = "imagecorruptions-1.1.2+endo.1";
  for (const auto& s : default_schedules()) {
    for (int sev = 1; sev <= 5; ++sev) table.set(s.type, sev, s.name, s.values[static_cast<std::size_t>(sev - 1)]);
  }
  return table;
}

SeverityParamTable SeverityParamTable::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("severity config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("severity config must be a JSON object");
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
    throw ConfigError("severity config lacks an integer schema_version");
  }
  if (doc["schema_version"].get<int>() != kSchemaVersion) {
    throw ConfigError("unsupported severity config schema_version " + doc["schema_version"].dump());
  }
  SeverityParamTable table;
  if (doc.contains("version")) table.version_ = doc["version"].get<std::string>();
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema_version" || key == "version") continue;
    const auto type = parse_corruption_type(key);
    if (!type) throw ConfigError("severity config names unknown corruption type '" + key + "'");
    if (!value.is_object()) throw ConfigError("severity config entry '" + key + "' must be an object");
    for (const auto& [sev_key, row] : value.items()) {
      int sev = 0;
      try {
        std::size_t used = 0;
        sev = std::stoi(sev_key, &used);
        if (used != sev_key.size()) throw std::invalid_argument(sev_key);
      } catch (const std::exception&) {
        throw ConfigError("severity key '" + key + "." + sev_key + "' is not an integer");
      }
      check_severity(sev);
      if (!row.is_object()) throw ConfigError("row '" + key + "." + sev_key + "' must be an object");
      for (const auto& [name, v] : row.items()) {
        if (!v.is_number()) throw ConfigError("parameter '" + key + "." + sev_key + "." + name + "' must be numeric");
        table.set(*type, sev, name, v.get<double>());
      }
    }
  }
  table.validate();
  return table;
}

SeverityParamTable SeverityParamTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open severity config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return from_json_text(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string SeverityParamTable::to_json_text() const {
  json doc = json::object();
  doc["schema_version"] = kSchemaVersion;
  doc["version"] = version_;
  for (const auto type : all_corruption_types()) {
    json per_type = json::object();
    for (int sev = 1; sev <= 5; ++sev) {
      json row_doc = json::object();
      for (const auto& [name, value] : rows_[static_cast<std::size_t>(type)][static_cast<std::size_t>(sev - 1)]) {
        row_doc[name] = value;
      }
      if (!row_doc.empty()) per_type[std::to_string(sev)] = row_doc;
    }
    doc[std::string(to_string(type))] = per_type;
  }
  return doc.dump(2) + "\n";
}

const SeverityParamTable::Row& SeverityParamTable::row(CorruptionType type, int severity) const {
  check_severity(severity);
  const auto t = static_cast<std::size_t>(type);
  if (t >= kNumCorruptionTypes) throw InvalidSpecError("corruption type out of range");
  return rows_[t][static_cast<std::size_t>(severity - 1)];
}

double SeverityParamTable::get(CorruptionType type, int severity, std::string_view name) const {
  const auto& r = row(type, severity);
  if (r.empty()) throw ConfigError("missing parameter row " + row_name(type, severity));
  const auto it = r.find(name);
  if (it == r.end()) {
    throw ConfigError("missing parameter " + row_name(type, severity) + "." + std::string(name));
  }
  return it->second;
}

bool SeverityParamTable::has_row(CorruptionType type, int severity) const { return !row(type, severity).empty(); }

void SeverityParamTable::set(CorruptionType type, int severity, std::string_view name, double value) {
  check_severity(severity);
  rows_[static_cast<std::size_t>(type)][static_cast<std::size_t>(severity - 1)].insert_or_assign(std::string(name), value);
}

void SeverityParamTable::erase_row(CorruptionType type, int severity) {
  check_severity(severity);
  rows_[static_cast<std::size_t>(type)][static_cast<std::size_t>(severity - 1)].clear();
}

void SeverityParamTable::validate() const {
  for (const auto type : all_corruption_types()) {
    const auto& schema = param_schema(type);
    for (int sev = 1; sev <= 5; ++sev) {
      for (const auto name : schema.required) (void)get(type, sev, name);
    }
    for (int sev = 2; sev <= 5; ++sev) {
      const double prev = get(type, sev - 1, schema.magnitude);
      const double cur = get(type, sev, schema.magnitude);
      const bool ok = schema.direction == Monotonicity::kNonDecreasing ? cur >= prev : cur <= prev;
      if (!ok) {
        throw ConfigError("parameter " + std::string(to_string(type)) + "." + std::string(schema.magnitude) +
                          " is not monotone between severities " + std::to_string(sev - 1) + " and " +
                          std::to_string(sev));
      }
    }
  }
}

}  // namespace endobench
