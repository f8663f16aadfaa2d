#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "endobench/corruption_type.hpp"
#include "endobench/image.hpp"
#include "endobench/severity_params.hpp"

namespace endobench::dataset {

struct FrameEntry {
  std::string frame_id;
  std::filesystem::path rgb_path;  // absolute after loading
  std::optional<std::filesystem::path> gt_depth_path;
  std::string sequence_id;
};

struct DatasetManifest {
  std::filesystem::path root;
  std::string split;
  std::vector<FrameEntry> frames;  // canonical iteration order
};

// Letters, digits, '.', '_' and '-', not starting with '.', at most 128 chars.
[[nodiscard]] bool is_safe_frame_id(std::string_view id) noexcept;

// JSON `{root, split, frames: [{frame_id, rgb, gt_depth, sequence}]}`. A
// relative root is taken relative to `base_dir`; frame paths relative to
// root. Throws ParseError (malformed), InvalidSpecError (duplicate or unsafe
// frame_id) and IoError (a referenced file does not exist, naming it).
[[nodiscard]] DatasetManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir);
[[nodiscard]] DatasetManifest load_manifest(const std::filesystem::path& path);

// Frame paths are written relative to root when they live under it. With
// manifest_dir set, root itself is written relative to that directory.
[[nodiscard]] std::string manifest_to_json(const DatasetManifest& manifest,
                                           const std::filesystem::path& manifest_dir = {});

struct CorruptionRun {
  std::uint64_t global_seed = 0;
  std::vector<CorruptionType> types;
  std::vector<int> severities = {1, 2, 3, 4, 5};
  std::filesystem::path output_root;
  unsigned workers = 0;  // 0: hardware concurrency
  bool emit_jpeg_debug = false;

  // Throws InvalidSpecError for empty sets, severity 0 or out of range.
  void validate() const;
};

struct IndexKey {
  std::string frame_id;
  CorruptionType type = CorruptionType::kBrightness;
  int severity = 1;

  friend auto operator<=>(const IndexKey&, const IndexKey&) = default;
};

struct IndexEntry {
  std::filesystem::path relative_path;
  std::string sha256;  // hex, over decoded RGB pixel bytes
  std::string params_version;
  std::uint64_t seed = 0;

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

struct OutputIndex {
  std::map<IndexKey, IndexEntry> entries;

  [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
};

inline constexpr std::string_view kIndexFileName = "index.jsonl";

// `<type>/<severity>/<frame_id>.png`
[[nodiscard]] std::filesystem::path output_relative_path(const IndexKey& key);

[[nodiscard]] std::string sha256_hex(std::span<const std::uint8_t> bytes);
[[nodiscard]] std::string pixel_hash(const RgbImage& image);

// One JSON object per line. Later lines win for repeated keys; a truncated
// final line (interrupted run) is ignored with a warning.
[[nodiscard]] OutputIndex read_index(const std::filesystem::path& path);
// Sorted, compacted journal; atomic replace.
void write_index(const std::filesystem::path& path, const OutputIndex& index);

// Writes `<output_root>/<type>/<severity>/<frame_id>.png` for every
// combination and journals each file in `<output_root>/index.jsonl` as it
// lands. Entries already journalled with the same seed and parameter version
// whose file exists are skipped, so an interrupted run resumes. Throws
// InvalidSpecError when output_root is the manifest root, IoError naming
// the offending path for filesystem failures.
[[nodiscard]] OutputIndex generate_corrupted_tree(const DatasetManifest& manifest, const CorruptionRun& run,
                                                  const SeverityParamTable& params);

struct IndexIssue {
  IndexKey key;
  std::filesystem::path path;
  std::string detail;
};

struct IndexVerification {
  std::size_t matches = 0;
  std::vector<IndexIssue> mismatches;
  std::vector<IndexIssue> missing;

  [[nodiscard]] bool clean() const noexcept { return mismatches.empty() && missing.empty(); }
};

// Re-hashes every indexed file under root. Discrepancies are reported, not thrown.
[[nodiscard]] IndexVerification verify_index(const OutputIndex& index, const std::filesystem::path& root,
                                             unsigned workers = 0);

[[nodiscard]] std::string render_verification(const IndexVerification& report);

}  // namespace endobench::dataset
