#include "endobench/ders.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "endobench/error.hpp"
#include "endobench/format.hpp"
#include "endobench/text_io.hpp"

namespace endobench::ders {
namespace {

using nlohmann::json;

bool is_error_row(std::size_t row) { return row < kNumErrorMetrics; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view cell, std::size_t line_no) {
  cell = trim(cell);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": '" + std::string(cell) + "' is not a number");
  }
  return value;
}

// Round through the printed form so JSON output carries exactly the
// presented digits.
double presented(const std::string& text) { return std::stod(text); }

}  // namespace

MetricRecord SeveritySeries::column(std::size_t level) const {
  MetricRecord r;
  for (std::size_t m = 0; m < kNumMetrics; ++m) r.values[m] = values[m][level];
  return r;
}

void SeveritySeries::set_column(std::size_t level, const MetricRecord& record) {
  for (std::size_t m = 0; m < kNumMetrics; ++m) values[m][level] = record.values[m];
}

SeveritySeries SeveritySeries::constant(const MetricRecord& record) {
  SeveritySeries s;
  for (std::size_t j = 0; j < kNumLevels; ++j) s.set_column(j, record);
  return s;
}

void SeveritySeries::validate() const {
  for (std::size_t m = 0; m < kNumMetrics; ++m) {
    for (std::size_t j = 0; j < kNumLevels; ++j) {
      const double v = values[m][j];
      const bool ok = is_error_row(m) ? std::isfinite(v) && v >= 0.0 : v >= 0.0 && v <= 1.0;
      if (!ok) {
        throw InvalidSpecError(std::string(depth::kMetricNames[m]) + " at severity " + std::to_string(j) + " is " +
                               format_metric(v) + (is_error_row(m) ? ", errors must be >= 0" : ", accuracies must lie in [0, 1]"));
      }
    }
  }
}

void DersWeights::validate() const {
  for (double w : accuracy) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidSpecError("accuracy weights must be finite and >= 0");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidSpecError("lambda must be finite and >= 0");
  if (!(epsilon > 0.0)) throw InvalidSpecError("epsilon must be > 0");
}

DersWeights DersWeights::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("weights file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("weights file must hold a JSON object");
  DersWeights w;
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "W") {
        w.accuracy = value.get<std::array<double, 3>>();
      } else if (key == "lambda") {
        w.lambda = value.get<double>();
      } else if (key == "epsilon") {
        w.epsilon = value.get<double>();
      } else if (key == "normalize_robustness") {
        w.normalize_robustness = value.get<bool>();
      } else if (key == "robustness_mode") {
        const auto mode = value.get<std::string>();
        if (mode == "level_spread") {
          w.robustness = RobustnessMode::kLevelSpread;
        } else if (mode == "clean_deviation") {
          w.robustness = RobustnessMode::kCleanDeviation;
        } else {
          throw ParseError("robustness_mode must be 'level_spread' or 'clean_deviation', got '" + mode + "'");
        }
      } else {
        throw ParseError("unknown weights field '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError("weights field '" + key + "': " + e.what());
    }
  }
  w.validate();
  return w;
}

std::string_view to_string(RobustnessMode mode) noexcept {
  return mode == RobustnessMode::kLevelSpread ? "level_spread" : "clean_deviation";
}

double error_component(const SeveritySeries& series, const DersWeights& weights) {
  // Summing per-level ratios keeps E exactly 4 for a series equal to its clean column.
  double e = 0.0;
  for (std::size_t i = 0; i < kNumErrorMetrics; ++i) {
    const auto& row = series.values[i];
    const double clean = std::max(row[0], weights.epsilon);
    double ratios = 0.0;
    for (std::size_t j = 1; j < kNumLevels; ++j) ratios += row[j] / clean;
    e += ratios / static_cast<double>(kCorruptedLevels);
  }
  return e;
}

double accuracy_component(const SeveritySeries& series, const DersWeights& weights) {
  double a = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto& row = series.values[kNumErrorMetrics + k];
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    a += weights.accuracy[k] * (total / static_cast<double>(kNumLevels));
  }
  return a;
}

double robustness_component(const SeveritySeries& series, const DersWeights& weights) {
  if (weights.lambda == 0.0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < kNumMetrics; ++i) {
    const auto& row = series.values[i];
    // Deviations are taken from a shifted origin so a flat row gives exactly 0.
    const double origin = weights.robustness == RobustnessMode::kLevelSpread ? row[1] : row[0];
    std::array<double, kCorruptedLevels> dev{};
    for (std::size_t j = 1; j < kNumLevels; ++j) dev[j - 1] = row[j] - origin;
    double centre = 0.0;
    if (weights.robustness == RobustnessMode::kLevelSpread) {
      for (double d : dev) centre += d;
      centre /= static_cast<double>(kCorruptedLevels);
    }
    double sq = 0.0;
    for (double d : dev) sq += (d - centre) * (d - centre);
    double spread = std::sqrt(sq / static_cast<double>(kCorruptedLevels));
    if (weights.normalize_robustness) spread /= std::max(std::abs(row[0]), weights.epsilon);
    total += spread;
  }
  return weights.lambda / static_cast<double>(kNumMetrics) * total;
}

DersBreakdown ders(const SeveritySeries& series, const DersWeights& weights) {
  DersBreakdown b;
  b.error = error_component(series, weights);
  b.accuracy = accuracy_component(series, weights);
  b.robustness = robustness_component(series, weights);
  if (b.accuracy == 0.0) throw DegenerateInputError("accuracy component is 0; DERS is undefined");
  b.score = b.error / b.accuracy * std::exp(-b.robustness);
  return b;
}

double mean_ders(const std::map<CorruptionType, double>& scores) {
  if (scores.empty()) throw DegenerateInputError("mean DERS of an empty score set");
  double sum = 0.0;
  for (const auto& [type, score] : scores) sum += score;
  return sum / static_cast<double>(scores.size());
}

BenchmarkSummary summarize(const std::map<CorruptionType, SeveritySeries>& series, const DersWeights& weights) {
  BenchmarkSummary summary;
  std::map<CorruptionType, double> scores;
  for (const auto& [type, s] : series) {
    summary.per_corruption[type] = ders(s, weights);
    scores[type] = summary.per_corruption[type].score;
  }
  summary.mean_ders = mean_ders(scores);
  return summary;
}

std::string summary_to_json(const BenchmarkSummary& summary) {
  json records = json::array();
  for (const auto& [type, b] : summary.per_corruption) {
    records.push_back({{"corruption", std::string(to_string(type))},
                       {"E", presented(format_metric(b.error))},
                       {"A", presented(format_metric(b.accuracy))},
                       {"R", presented(format_metric(b.robustness))},
                       {"ders", presented(format_score(b.score))}});
  }
  json doc = {{"corruptions", records}, {"mean_ders", presented(format_score(summary.mean_ders))}};
  return doc.dump(2) + "\n";
}

std::string summary_to_tsv(const BenchmarkSummary& summary) {
  std::string out = "corruption\tders\n";
  for (const auto& [type, b] : summary.per_corruption) {
    out += std::string(to_string(type)) + "\t" + format_score(b.score) + "\n";
  }
  return out;
}

TableBlock parse_table_block(std::string_view csv) {
  TableBlock block;
  std::array<bool, kNumLevels> seen{};
  bool have_header = false;
  std::size_t line_no = 0;
  while (!csv.empty()) {
    const auto eol = csv.find('\n');
    std::string_view line = trim(csv.substr(0, eol));
    csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon != std::string_view::npos) {
        block.meta[std::string(trim(body.substr(0, colon)))] = std::string(trim(body.substr(colon + 1)));
      }
      continue;
    }
    if (!have_header) {
      if (line != kTableHeader) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header '" + std::string(kTableHeader) + "'");
      }
      have_header = true;
      continue;
    }
    std::array<std::string_view, kNumMetrics + 1> cells{};
    std::size_t count = 0;
    for (std::string_view rest = line;;) {
      const auto comma = rest.find(',');
      if (count == cells.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": too many columns, expected " + std::to_string(cells.size()));
      }
      cells[count++] = rest.substr(0, comma);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (count != cells.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(cells.size()) + " columns, got " +
                       std::to_string(count));
    }
    const double sev = parse_number(cells[0], line_no);
    if (sev != std::floor(sev) || sev < 0 || sev > 5) {
      throw ParseError("line " + std::to_string(line_no) + ": severity must be an integer in 0..5");
    }
    const auto level = static_cast<std::size_t>(sev);
    if (seen[level]) throw ParseError("line " + std::to_string(line_no) + ": severity " + std::to_string(level) + " repeated");
    seen[level] = true;
    for (std::size_t m = 0; m < kNumMetrics; ++m) block.series.values[m][level] = parse_number(cells[m + 1], line_no);
  }
  if (!have_header) throw ParseError("table has no header row");
  for (std::size_t j = 0; j < kNumLevels; ++j) {
    if (!seen[j]) throw ParseError("table is missing the severity " + std::to_string(j) + " row");
  }
  block.series.validate();
  return block;
}

SeveritySeries from_table(std::string_view csv) { return parse_table_block(csv).series; }

SeveritySeries load_table(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  try {
    return from_table(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const InvalidSpecError& e) {
    throw InvalidSpecError(path.string() + ": " + e.what());
  }
}

std::string emit_table(const SeveritySeries& series) {
  std::string out(kTableHeader);
  out += '\n';
  for (std::size_t j = 0; j < kNumLevels; ++j) {
    out += std::to_string(j);
    for (std::size_t m = 0; m < kNumMetrics; ++m) out += "," + format_metric(series.values[m][j]);
    out += '\n';
  }
  return out;
}

}  // namespace endobench::ders
