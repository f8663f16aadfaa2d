#include "endobench/cli.hpp"

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "endobench/dataset.hpp"
#include "endobench/ders.hpp"
#include "endobench/error.hpp"
#include "endobench/evaluation.hpp"
#include "endobench/format.hpp"
#include "endobench/logging.hpp"
#include "endobench/paper_fixtures.hpp"
#include "endobench/text_io.hpp"

namespace endobench::cli {
namespace fs = std::filesystem;
namespace {

// Bad flag values found after parsing; reported with the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<CorruptionType> parse_types(const std::string& text) {
  try {
    return parse_corruption_list(text);
  } catch (const InvalidSpecError& e) {
    throw UsageError(std::string("--types: ") + e.what());
  }
}

std::vector<int> parse_severities(const std::string& text) {
  std::vector<int> out;
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto item = rest.substr(0, comma);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || value < 1 || value > 5) {
      throw UsageError("--severities expects a comma-separated list of levels in 1..5, got '" + text + "'");
    }
    if (std::find(out.begin(), out.end(), value) == out.end()) out.push_back(value);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  if (out.empty()) throw UsageError("--severities is empty");
  std::sort(out.begin(), out.end());
  return out;
}

ders::DersWeights load_weights(const std::string& path) {
  if (path.empty()) return {};
  return ders::DersWeights::from_json_text(read_text_file(path));
}

// All flags, one field each.
struct RunConfig {
  std::string manifest;
  std::string out;
  std::string types = "all";
  std::string severities = "1,2,3,4,5";
  std::uint64_t seed = 0;
  std::string params;
  bool jpeg_debug = false;
  std::string pred_dir;
  std::string clean_pred_dir;
  std::string eval_dir;
  std::string protocol;
  std::string weights;
  bool strict = false;
  unsigned workers = 0;
  std::string format;
  std::string fixtures;
  double tolerance = 0.1;
  bool apply_errata = false;
  std::string index_root;
};

int cmd_corrupt(const RunConfig& cfg, std::ostream& out) {
  const auto types = parse_types(cfg.types);
  const auto severities = parse_severities(cfg.severities);
  const auto params = cfg.params.empty() ? SeverityParamTable::defaults() : SeverityParamTable::load(cfg.params);
  params.validate();
  const auto manifest = dataset::load_manifest(cfg.manifest);
  out << "manifest: " << manifest.frames.size() << " frames (split '" << manifest.split << "')\n";

  dataset::CorruptionRun run;
  run.global_seed = cfg.seed;
  run.types = types;
  run.severities = severities;
  run.output_root = cfg.out;
  run.workers = cfg.workers;
  run.emit_jpeg_debug = cfg.jpeg_debug;
  const auto index = dataset::generate_corrupted_tree(manifest, run, params);

  std::map<CorruptionType, std::size_t> per_type;
  for (const auto& [key, entry] : index.entries) ++per_type[key.type];
  for (const auto& [type, count] : per_type) out << to_string(type) << ": " << count << " files\n";
  out << index.size() << " files indexed in " << (fs::path(cfg.out) / dataset::kIndexFileName).string() << "\n";
  return kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
  eval::EvaluateConfig ec;
  ec.pred_dir = cfg.pred_dir;
  ec.clean_pred_dir = cfg.clean_pred_dir;
  ec.types = parse_types(cfg.types);
  ec.severities = parse_severities(cfg.severities);
  if (!cfg.protocol.empty()) ec.protocol = depth::EvalProtocol::from_json_text(read_text_file(cfg.protocol));
  ec.strict = cfg.strict;
  ec.workers = cfg.workers;
  const auto manifest = dataset::load_manifest(cfg.manifest);
  const auto result = eval::evaluate(manifest, ec);
  eval::write_evaluation(result, cfg.out);
  out << "evaluated " << manifest.frames.size() << " frames x " << result.tables.size() << " corruptions into "
      << cfg.out << "\n";
  out << result.exceptions.size() << " exceptions";
  if (!result.exceptions.empty()) out << " (see " << (fs::path(cfg.out) / "exceptions.csv").string() << ")";
  out << "\n";
  return kExitOk;
}

std::string render_summary(const ders::BenchmarkSummary& summary, const std::string& format) {
  if (format == "json") return ders::summary_to_json(summary);
  return eval::render_breakdown(summary, format == "csv" ? ',' : '\t');
}

int cmd_score(const RunConfig& cfg, std::ostream& out) {
  const auto result = eval::score_directory(cfg.eval_dir, load_weights(cfg.weights));
  const fs::path dest = cfg.out.empty() ? fs::path(cfg.eval_dir) : fs::path(cfg.out);
  eval::write_score(result.summary, dest);
  out << render_summary(result.summary, cfg.format.empty() ? "tsv" : cfg.format);
  return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.index_root.empty()) {
    const fs::path root = cfg.index_root;
    const auto index = dataset::read_index(root / dataset::kIndexFileName);
    const auto report = dataset::verify_index(index, root, cfg.workers);
    out << dataset::render_verification(report);
    return report.clean() ? kExitOk : kExitDomainError;
  }
  if (cfg.eval_dir.empty()) throw UsageError("report needs --eval-dir or --index");
  const auto result = eval::score_directory(cfg.eval_dir, load_weights(cfg.weights));
  out << render_summary(result.summary, cfg.format.empty() ? "tsv" : cfg.format);
  for (const auto& s : result.skipped) out << "# skipped " << s << "\n";
  return kExitOk;
}

std::string verify_report_json(const paper::VerifyReport& report) {
  using nlohmann::json;
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"model", r.model},
                    {"corruption", std::string(to_string(r.type))},
                    {"E", std::stod(format_metric(r.computed.error))},
                    {"A", std::stod(format_metric(r.computed.accuracy))},
                    {"R", std::stod(format_metric(r.computed.robustness))},
                    {"computed", std::stod(format_fixed(r.computed.score, 3))},
                    {"printed", r.printed},
                    {"reference", r.reference},
                    {"delta", std::stod(format_fixed(r.delta, 3))},
                    {"pass", r.pass}});
  }
  json means = json::array();
  for (const auto& m : report.means) {
    json j = {{"model", m.model},
              {"computed_mean", std::stod(format_fixed(m.computed_mean, 3))},
              {"printed_mean", std::stod(format_fixed(m.printed_mean, 3))},
              {"flagged", m.flagged}};
    j["reported_mean"] = m.reported_mean ? json(*m.reported_mean) : json(nullptr);
    means.push_back(std::move(j));
  }
  json doc = {{"rows", rows},
              {"means", means},
              {"passed", report.passed()},
              {"total", report.rows.size()},
              {"tolerance", report.tolerance},
              {"errata_applied", report.errata_applied}};
  return doc.dump(2) + "\n";
}

int cmd_verify_paper(const RunConfig& cfg, std::ostream& out) {
  if (!(cfg.tolerance >= 0.0)) throw UsageError("--tolerance must be >= 0");
  const fs::path dir = cfg.fixtures.empty() ? paper::default_fixtures_dir() : fs::path(cfg.fixtures);
  const auto fixtures = paper::load_fixtures(dir);
  paper::VerifyOptions options;
  options.tolerance = cfg.tolerance;
  options.apply_errata = cfg.apply_errata;
  options.weights = load_weights(cfg.weights);
  const auto report = paper::verify(fixtures, options);
  out << (cfg.format == "json" ? verify_report_json(report) : paper::render_report(report));
  return report.all_pass() ? kExitOk : kExitDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Corruption robustness benchmark for monocular depth estimation", "endobench"};
  app.require_subcommand(1);
  RunConfig cfg;
  const auto formats = CLI::IsMember({"csv", "json", "tsv"});

  auto* corrupt = app.add_subcommand("corrupt", "Generate the corrupted image tree for a manifest");
  corrupt->add_option("--manifest", cfg.manifest, "Dataset manifest (JSON)")->required();
  corrupt->add_option("--out", cfg.out, "Output root")->required();
  corrupt->add_option("--types", cfg.types, "Comma-separated corruption tags, or 'all'");
  corrupt->add_option("--severities", cfg.severities, "Comma-separated levels in 1..5");
  corrupt->add_option("--seed", cfg.seed, "Global seed");
  corrupt->add_option("--params", cfg.params, "Severity parameter config (JSON)");
  corrupt->add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
  corrupt->add_flag("--jpeg-debug", cfg.jpeg_debug, "Also keep the encoded .jpg for jpeg_compression");

  auto* evaluate = app.add_subcommand("evaluate", "Compute per-severity depth metrics for predictions");
  evaluate->add_option("--manifest", cfg.manifest, "Dataset manifest (JSON)")->required();
  evaluate->add_option("--pred-dir", cfg.pred_dir, "Predictions laid out as <ctype>/<severity>/<frame_id>")->required();
  evaluate->add_option("--clean-pred-dir", cfg.clean_pred_dir, "Predictions on the clean frames")->required();
  evaluate->add_option("--out", cfg.out, "Evaluation output directory")->required();
  evaluate->add_option("--types", cfg.types, "Comma-separated corruption tags, or 'all'");
  evaluate->add_option("--severities", cfg.severities, "Comma-separated levels in 1..5");
  evaluate->add_option("--protocol", cfg.protocol, "Evaluation protocol (JSON)");
  evaluate->add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
  evaluate->add_flag("--strict", cfg.strict, "Fail on the first missing prediction");

  auto* score = app.add_subcommand("score", "Score evaluation tables with DERS");
  score->add_option("--eval-dir", cfg.eval_dir, "Directory written by evaluate")->required();
  score->add_option("--out", cfg.out, "Where summary.json and ders.tsv go (default: --eval-dir)");
  score->add_option("--weights", cfg.weights, "DERS weights (JSON)");
  score->add_option("--format", cfg.format, "Stdout format")->check(formats);

  auto* report = app.add_subcommand("report", "Print a DERS breakdown or audit a corrupted tree");
  report->add_option("--eval-dir", cfg.eval_dir, "Directory written by evaluate");
  report->add_option("--index", cfg.index_root, "Corrupted tree root holding index.jsonl");
  report->add_option("--weights", cfg.weights, "DERS weights (JSON)");
  report->add_option("--workers", cfg.workers, "Worker threads (0: all cores)");
  report->add_option("--format", cfg.format, "Output format")->check(formats);

  auto* verify = app.add_subcommand("verify-paper", "Recompute the published DERS tables from fixtures");
  verify->add_option("--fixtures", cfg.fixtures, "Fixture directory (default: $ENDOBENCH_FIXTURES or bundled)");
  verify->add_option("--tolerance", cfg.tolerance, "Maximum |computed - printed|");
  verify->add_option("--weights", cfg.weights, "DERS weights (JSON)");
  verify->add_flag("--apply-errata", cfg.apply_errata, "Compare against errata.json corrections");
  verify->add_option("--format", cfg.format, "Output format (json or tsv)")->check(CLI::IsMember({"json", "tsv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; anything else is a usage error.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  auto previous = set_log_sink([&err](LogLevel level, std::string_view msg) {
    if (level == LogLevel::kWarning) err << "warning: " << msg << "\n";
  });
  int code = kExitOk;
  try {
    if (corrupt->parsed()) {
      code = cmd_corrupt(cfg, out);
    } else if (evaluate->parsed()) {
      code = cmd_evaluate(cfg, out);
    } else if (score->parsed()) {
      code = cmd_score(cfg, out);
    } else if (report->parsed()) {
      code = cmd_report(cfg, out);
    } else {
      code = cmd_verify_paper(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    code = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kExitDomainError;
  }
  set_log_sink(std::move(previous));
  return code;
}

}  // namespace endobench::cli
