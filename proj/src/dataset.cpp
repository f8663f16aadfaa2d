#include "endobench/dataset.hpp"

#include <algorithm>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>
#include <openssl/evp.h>

#include "endobench/corruption.hpp"
#include "endobench/error.hpp"
#include "endobench/image_io.hpp"
#include "endobench/logging.hpp"
#include "endobench/rng.hpp"
#include "endobench/text_io.hpp"
#include "parallel.hpp"

namespace endobench::dataset {
namespace fs = std::filesystem;
namespace {

using nlohmann::json;
using detail::parallel_for;
using detail::resolve_workers;

fs::path resolve(const fs::path& base, const fs::path& p) { return p.is_absolute() ? p : base / p; }

json entry_to_json(const IndexKey& key, const IndexEntry& entry) {
  return {{"frame_id", key.frame_id},
          {"ctype", std::string(to_string(key.type))},
          {"severity", key.severity},
          {"path", entry.relative_path.generic_string()},
          {"sha256", entry.sha256},
          {"params_version", entry.params_version},
          {"seed", entry.seed}};
}

std::pair<IndexKey, IndexEntry> entry_from_json(const json& j) {
  IndexKey key{j.at("frame_id").get<std::string>(), corruption_type_from_tag(j.at("ctype").get<std::string>()),
               j.at("severity").get<int>()};
  IndexEntry entry{fs::path(j.at("path").get<std::string>()), j.at("sha256").get<std::string>(),
                   j.at("params_version").get<std::string>(), j.at("seed").get<std::uint64_t>()};
  return {std::move(key), std::move(entry)};
}

// Collects finished entries from the workers and appends them to the journal.
class JournalWriter {
 public:
  explicit JournalWriter(const fs::path& path) : path_(path), out_(path, std::ios::app | std::ios::binary) {
    if (!out_) throw IoError("cannot open index journal " + path.string());
    thread_ = std::thread([this] { run(); });
  }

  JournalWriter(const JournalWriter&) = delete;
  JournalWriter& operator=(const JournalWriter&) = delete;

  ~JournalWriter() { stop(); }

  void push(IndexKey key, IndexEntry entry) {
    {
      std::lock_guard lock(mu_);
      queue_.emplace_back(std::move(key), std::move(entry));
    }
    cv_.notify_one();
  }

  // Drains the queue and joins the writer. Returns the journalled entries.
  std::map<IndexKey, IndexEntry> finish() {
    stop();
    if (error_) std::rethrow_exception(error_);
    return std::move(written_);
  }

 private:
  void stop() noexcept {
    if (!thread_.joinable()) return;
    {
      std::lock_guard lock(mu_);
      done_ = true;
    }
    cv_.notify_one();
    thread_.join();
  }

  void run() {
    for (;;) {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [this] { return done_ || !queue_.empty(); });
      if (queue_.empty()) return;
      auto item = std::move(queue_.front());
      queue_.pop_front();
      lock.unlock();
      if (error_) continue;
      try {
        out_ << entry_to_json(item.first, item.second).dump() << '\n';
        out_.flush();
        if (!out_) throw IoError("failed writing index journal " + path_.string());
        written_.insert_or_assign(std::move(item.first), std::move(item.second));
      } catch (...) {
        error_ = std::current_exception();
      }
    }
  }

  fs::path path_;
  std::ofstream out_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::pair<IndexKey, IndexEntry>> queue_;
  bool done_ = false;
  std::map<IndexKey, IndexEntry> written_;
  std::exception_ptr error_;
  std::thread thread_;
};

}  // namespace

bool is_safe_frame_id(std::string_view id) noexcept {
  if (id.empty() || id.size() > 128 || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
  });
}

DatasetManifest parse_manifest(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  DatasetManifest m;
  try {
    if (!doc.is_object()) throw ParseError("manifest must be a JSON object");
    m.root = resolve(base_dir, doc.value("root", std::string(".")));
    m.split = doc.value("split", std::string{});
    std::set<std::string> seen;
    for (const auto& f : doc.at("frames")) {
      FrameEntry e;
      e.frame_id = f.at("frame_id").get<std::string>();
      if (!is_safe_frame_id(e.frame_id)) throw InvalidSpecError("frame_id '" + e.frame_id + "' is not filesystem-safe");
      if (!seen.insert(e.frame_id).second) throw InvalidSpecError("duplicate frame_id '" + e.frame_id + "'");
      e.rgb_path = resolve(m.root, f.at("rgb").get<std::string>());
      if (!fs::is_regular_file(e.rgb_path)) {
        throw IoError("frame '" + e.frame_id + "' references missing image " + e.rgb_path.string());
      }
      if (f.contains("gt_depth") && !f.at("gt_depth").is_null()) {
        e.gt_depth_path = resolve(m.root, f.at("gt_depth").get<std::string>());
        if (!fs::is_regular_file(*e.gt_depth_path)) {
          throw IoError("frame '" + e.frame_id + "' references missing depth map " + e.gt_depth_path->string());
        }
      }
      e.sequence_id = f.value("sequence", std::string{});
      m.frames.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what());
  }
  if (m.frames.empty()) log_warning("manifest lists no frames");
  return m;
}

DatasetManifest load_manifest(const fs::path& path) {
  const auto text = read_text_file(path);
  try {
    auto m = parse_manifest(text, path.parent_path().empty() ? fs::path(".") : path.parent_path());
    log_info("loaded " + std::to_string(m.frames.size()) + " frames from " + path.string());
    return m;
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const InvalidSpecError& e) {
    throw InvalidSpecError(path.string() + ": " + e.what());
  }
}

std::string manifest_to_json(const DatasetManifest& manifest, const fs::path& manifest_dir) {
  auto rel = [&](const fs::path& p) {
    const auto r = p.lexically_relative(manifest.root);
    return (r.empty() || *r.begin() == "..") ? p.generic_string() : r.generic_string();
  };
  json frames = json::array();
  for (const auto& f : manifest.frames) {
    json j = {{"frame_id", f.frame_id}, {"rgb", rel(f.rgb_path)}, {"sequence", f.sequence_id}};
    j["gt_depth"] = f.gt_depth_path ? json(rel(*f.gt_depth_path)) : json(nullptr);
    frames.push_back(std::move(j));
  }
  fs::path root = manifest.root;
  if (!manifest_dir.empty()) {
    const auto r = fs::absolute(manifest.root).lexically_normal().lexically_relative(fs::absolute(manifest_dir).lexically_normal());
    if (!r.empty()) root = r;
  }
  json doc = {{"root", root.generic_string()}, {"split", manifest.split}, {"frames", frames}};
  return doc.dump(2) + "\n";
}

void CorruptionRun::validate() const {
  if (types.empty()) throw InvalidSpecError("corruption run selects no types");
  if (severities.empty()) throw InvalidSpecError("corruption run selects no severities");
  for (int s : severities) {
    if (s < 1 || s > SeverityLevel::kMax) {
      throw InvalidSpecError("run severities must lie in 1..5 (clean images are referenced, not copied); got " +
                             std::to_string(s));
    }
  }
  if (output_root.empty()) throw InvalidSpecError("corruption run needs an output root");
}

fs::path output_relative_path(const IndexKey& key) {
  return fs::path(std::string(to_string(key.type))) / std::to_string(key.severity) / (key.frame_id + ".png");
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string pixel_hash(const RgbImage& image) { return sha256_hex(image.pixels()); }

OutputIndex read_index(const fs::path& path) {
  const auto text = read_text_file(path);
  OutputIndex index;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    const bool terminated = end != std::string::npos;
    if (!terminated) end = text.size();
    const std::string_view line(text.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      auto [key, entry] = entry_from_json(json::parse(line));
      index.entries.insert_or_assign(std::move(key), std::move(entry));
    } catch (const std::exception& e) {
      if (!terminated) {
        log_warning(path.string() + ": ignoring incomplete final journal line");
        break;
      }
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return index;
}

void write_index(const fs::path& path, const OutputIndex& index) {
  std::string text;
  for (const auto& [key, entry] : index.entries) text += entry_to_json(key, entry).dump() + "\n";
  write_text_file(path, text);
}

OutputIndex generate_corrupted_tree(const DatasetManifest& manifest, const CorruptionRun& run,
                                    const SeverityParamTable& params) {
  run.validate();
  for (auto type : run.types) {
    for (int s : run.severities) {
      if (!params.has_row(type, s)) {
        throw ConfigError("severity config lacks " + std::string(to_string(type)) + "." + std::to_string(s));
      }
    }
  }

  std::error_code ec;
  const auto out_canon = fs::weakly_canonical(run.output_root, ec);
  const auto root_canon = fs::weakly_canonical(manifest.root, ec);
  if (!out_canon.empty() && out_canon == root_canon) {
    throw InvalidSpecError("output root " + run.output_root.string() + " must differ from the manifest root");
  }
  std::set<fs::path> inputs;
  for (const auto& f : manifest.frames) inputs.insert(fs::weakly_canonical(f.rgb_path, ec));

  for (auto type : run.types) {
    for (int s : run.severities) {
      const auto dir = run.output_root / std::string(to_string(type)) / std::to_string(s);
      fs::create_directories(dir, ec);
      if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
  }

  const auto journal_path = run.output_root / kIndexFileName;
  OutputIndex previous;
  if (fs::exists(journal_path)) previous = read_index(journal_path);

  OutputIndex result;
  std::mutex result_mu;
  {
    JournalWriter journal(journal_path);
    parallel_for(manifest.frames.size(), resolve_workers(run.workers), [&](std::size_t i) {
      const auto& frame = manifest.frames[i];
      std::optional<RgbImage> clean;
      for (auto type : run.types) {
        for (int s : run.severities) {
          IndexKey key{frame.frame_id, type, s};
          const auto seed = derive_seed(run.global_seed, frame.frame_id, type, SeverityLevel(s));
          const auto rel = output_relative_path(key);
          const auto out_path = run.output_root / rel;
          if (const auto it = previous.entries.find(key); it != previous.entries.end() && it->second.seed == seed &&
                                                          it->second.params_version == params.version() &&
                                                          fs::is_regular_file(out_path)) {
            std::lock_guard lock(result_mu);
            result.entries.emplace(key, it->second);
            continue;
          }
          if (inputs.count(fs::weakly_canonical(out_path))) {
            throw InvalidSpecError("output " + out_path.string() + " would overwrite a clean input");
          }
          if (!clean) clean = read_rgb_image(frame.rgb_path);
          RgbImage corrupted;
          if (type == CorruptionType::kJpegCompression && run.emit_jpeg_debug) {
            auto jpeg = apply_jpeg_with_stream(*clean, s, params);
            auto jpg_path = out_path;
            jpg_path.replace_extension(".jpg");
            write_bytes(jpg_path, jpeg.encoded);
            corrupted = std::move(jpeg.decoded);
          } else {
            corrupted = apply_corruption(*clean, CorruptionSpec{type, SeverityLevel(s), seed}, params);
          }
          write_png(out_path, corrupted);
          IndexEntry entry{rel, pixel_hash(corrupted), params.version(), seed};
          {
            std::lock_guard lock(result_mu);
            result.entries.emplace(key, entry);
          }
          journal.push(std::move(key), std::move(entry));
        }
      }
    });
    (void)journal.finish();
  }

  // Compact the journal: earlier entries outside this run are kept.
  OutputIndex compacted = std::move(previous);
  for (const auto& [key, entry] : result.entries) compacted.entries.insert_or_assign(key, entry);
  write_index(journal_path, compacted);
  return result;
}

IndexVerification verify_index(const OutputIndex& index, const fs::path& root, unsigned workers) {
  std::vector<const std::pair<const IndexKey, IndexEntry>*> items;
  for (const auto& item : index.entries) items.push_back(&item);
  enum class Status { kMatch, kMismatch, kMissing };
  std::vector<std::pair<Status, std::string>> outcome(items.size());
  parallel_for(items.size(), resolve_workers(workers), [&](std::size_t i) {
    const auto path = root / items[i]->second.relative_path;
    if (!fs::exists(path)) {
      outcome[i] = {Status::kMissing, "file not found"};
      return;
    }
    try {
      const auto hash = pixel_hash(read_rgb_image(path));
      if (hash == items[i]->second.sha256) {
        outcome[i] = {Status::kMatch, {}};
      } else {
        outcome[i] = {Status::kMismatch, "hash " + hash.substr(0, 16) + "... differs from indexed " +
                                             items[i]->second.sha256.substr(0, 16) + "..."};
      }
    } catch (const IoError& e) {
      outcome[i] = {Status::kMismatch, std::string("unreadable: ") + e.what()};
    }
  });
  IndexVerification report;
  for (std::size_t i = 0; i < items.size(); ++i) {
    IndexIssue issue{items[i]->first, root / items[i]->second.relative_path, outcome[i].second};
    switch (outcome[i].first) {
      case Status::kMatch:
        ++report.matches;
        break;
      case Status::kMismatch:
        report.mismatches.push_back(std::move(issue));
        break;
      case Status::kMissing:
        report.missing.push_back(std::move(issue));
        break;
    }
  }
  return report;
}

std::string render_verification(const IndexVerification& report) {
  std::string out;
  for (const auto& m : report.mismatches) out += "MISMATCH\t" + m.path.generic_string() + "\t" + m.detail + "\n";
  for (const auto& m : report.missing) out += "MISSING\t" + m.path.generic_string() + "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%zu matches, %zu mismatches, %zu missing\n", report.matches,
                report.mismatches.size(), report.missing.size());
  return out + line;
}

}  // namespace endobench::dataset
