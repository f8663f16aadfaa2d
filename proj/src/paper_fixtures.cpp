#include "endobench/paper_fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "endobench/error.hpp"
#include "endobench/format.hpp"
#include "endobench/text_io.hpp"

#ifndef ENDOBENCH_FIXTURES_DIR
#define ENDOBENCH_FIXTURES_DIR "fixtures/paper"
#endif

namespace endobench::paper {
namespace fs = std::filesystem;
namespace {

using nlohmann::json;

constexpr double kMeanFlagThreshold = 0.01;

double meta_number(const ders::TableBlock& tb, const std::string& key, const fs::path& path) {
  const auto it = tb.meta.find(key);
  if (it == tb.meta.end()) throw ParseError(path.string() + ": missing '# " + key + ":' line");
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path.string() + ": '" + key + "' is not a number");
  }
}

void load_errata(Fixtures& fx) {
  const auto path = fx.dir / "errata.json";
  if (!fs::exists(path)) return;
  json doc;
  try {
    doc = json::parse(read_text_file(path));
    const json means = doc.value("reported_means", json::object());
    for (const auto& [model, mean] : means.items()) {
      fx.reported_means[model] = mean.get<double>();
    }
    const json errata = doc.value("errata", json::array());
    for (const auto& e : errata) {
      fx.errata.push_back({e.at("model").get<std::string>(),
                           corruption_type_from_tag(e.at("corruption").get<std::string>()),
                           e.at("printed_ders").get<double>(), e.at("corrected_ders").get<double>(),
                           e.value("note", std::string{})});
    }
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> Fixtures::models() const {
  std::vector<std::string> out;
  for (const auto& b : blocks) {
    if (out.empty() || out.back() != b.model) out.push_back(b.model);
  }
  return out;
}

const Block& Fixtures::block(const std::string& model, CorruptionType type) const {
  for (const auto& b : blocks) {
    if (b.model == model && b.type == type) return b;
  }
  throw ConfigError("no fixture block for " + model + "/" + std::string(to_string(type)));
}

fs::path default_fixtures_dir() {
  if (const char* env = std::getenv("ENDOBENCH_FIXTURES"); env != nullptr && *env != '\0') return env;
  return ENDOBENCH_FIXTURES_DIR;
}

Fixtures load_fixtures(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("fixtures directory not found: " + dir.string());
  Fixtures fx;
  fx.dir = dir;
  std::set<fs::path> model_dirs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) model_dirs.insert(entry.path());
  }
  for (const auto& model_dir : model_dirs) {
    std::set<fs::path> files;
    for (const auto& entry : fs::directory_iterator(model_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") files.insert(entry.path());
    }
    std::vector<Block> model_blocks;
    for (const auto& path : files) {
      const auto type = parse_corruption_type(path.stem().string());
      if (!type) throw ParseError(path.string() + ": file name is not a corruption tag");
      ders::TableBlock tb;
      try {
        tb = ders::parse_table_block(read_text_file(path));
      } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
      }
      Block b;
      b.model = model_dir.filename().string();
      b.display_name = tb.meta.count("model") ? tb.meta.at("model") : b.model;
      b.type = *type;
      b.series = tb.series;
      b.printed_ders = meta_number(tb, "printed_ders", path);
      model_blocks.push_back(std::move(b));
    }
    std::sort(model_blocks.begin(), model_blocks.end(), [](const Block& a, const Block& b) { return a.type < b.type; });
    for (auto& b : model_blocks) fx.blocks.push_back(std::move(b));
  }
  if (fx.blocks.empty()) throw IoError("no fixture tables under " + dir.string());
  load_errata(fx);
  return fx;
}

std::size_t VerifyReport::passed() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; }));
}

VerifyReport verify(const Fixtures& fixtures, const VerifyOptions& options) {
  options.weights.validate();
  VerifyReport report;
  report.tolerance = options.tolerance;
  report.errata_applied = options.apply_errata;
  for (const auto& b : fixtures.blocks) {
    VerifyRow row;
    row.model = b.model;
    row.type = b.type;
    row.computed = ders::ders(b.series, options.weights);
    row.printed = b.printed_ders;
    row.reference = b.printed_ders;
    if (options.apply_errata) {
      for (const auto& e : fixtures.errata) {
        if (e.model == b.model && e.type == b.type) {
          row.reference = e.corrected_ders;
          row.corrected = true;
        }
      }
    }
    row.delta = row.computed.score - row.reference;
    row.pass = std::abs(row.delta) <= options.tolerance;
    report.rows.push_back(row);
  }
  for (const auto& model : fixtures.models()) {
    ModelMean m;
    m.model = model;
    std::size_t n = 0;
    for (const auto& r : report.rows) {
      if (r.model != model) continue;
      m.computed_mean += r.computed.score;
      m.printed_mean += r.printed;
      ++n;
    }
    m.computed_mean /= static_cast<double>(n);
    m.printed_mean /= static_cast<double>(n);
    if (const auto it = fixtures.reported_means.find(model); it != fixtures.reported_means.end()) {
      m.reported_mean = it->second;
      m.flagged = std::abs(m.printed_mean - it->second) > kMeanFlagThreshold;
    }
    report.means.push_back(m);
  }
  return report;
}

std::string render_report(const VerifyReport& report) {
  std::string out = "model\tcorruption\tE\tA\tR\tcomputed\tprinted\tdelta\tstatus\n";
  for (const auto& r : report.rows) {
    out += r.model + "\t" + std::string(to_string(r.type)) + "\t" + format_fixed(r.computed.error, 4) + "\t" +
           format_fixed(r.computed.accuracy, 4) + "\t" + format_fixed(r.computed.robustness, 4) + "\t" +
           format_fixed(r.computed.score, 3) + "\t" + format_score(r.reference) + "\t" + format_fixed(r.delta, 3) + "\t" +
           (r.pass ? "ok" : "FAIL");
    if (r.corrected) out += " (erratum: printed " + format_score(r.printed) + ")";
    out += "\n";
  }
  out += "\n";
  for (const auto& m : report.means) {
    out += m.model + ": recomputed mean " + format_fixed(m.computed_mean, 3) + ", mean of printed scores " +
           format_fixed(m.printed_mean, 3);
    if (m.reported_mean) {
      out += ", reported " + format_score(*m.reported_mean);
      if (m.flagged) out += "  [FLAG: mean of printed scores disagrees with the reported mean]";
    }
    out += "\n";
  }
  char summary[128];
  std::snprintf(summary, sizeof summary, "%zu/%zu within tolerance %s%s\n", report.passed(), report.rows.size(),
                format_fixed(report.tolerance, 3).c_str(), report.errata_applied ? " (errata applied)" : "");
  out += summary;
  return out;
}

}  // namespace endobench::paper
