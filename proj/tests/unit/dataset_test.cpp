#include <fstream>

#include <gtest/gtest.h>

#include "endobench/dataset.hpp"
#include "endobench/error.hpp"
#include "endobench/image_io.hpp"
#include "endobench/logging.hpp"
#include "endobench/synth.hpp"
#include "endobench/text_io.hpp"
#include "test_support.hpp"

namespace endobench::dataset {
namespace {

namespace fs = std::filesystem;

std::map<IndexKey, std::string> hashes(const OutputIndex& index) {
  std::map<IndexKey, std::string> out;
  for (const auto& [k, e] : index.entries) out[k] = e.sha256;
  return out;
}

CorruptionRun run_for(const fs::path& out, std::vector<CorruptionType> types, std::uint64_t seed = 1) {
  CorruptionRun r;
  r.global_seed = seed;
  r.types = std::move(types);
  r.output_root = out;
  r.workers = 2;
  return r;
}

TEST(Manifest, LoadsAndResolvesPaths) {
  testing::TempDir tmp;
  const auto m = synth::write_dataset(tmp.path(), {.frames = 3, .width = 8, .height = 6});
  ASSERT_EQ(m.frames.size(), 3u);
  EXPECT_EQ(m.split, "test");
  EXPECT_TRUE(fs::exists(m.frames[2].rgb_path));
  ASSERT_TRUE(m.frames[0].gt_depth_path.has_value());
  EXPECT_EQ(m.frames[0].frame_id, "frame_000");
}

TEST(Manifest, EmptyFrameListWarns) {
  testing::TempDir tmp;
  std::vector<std::string> warnings;
  auto prev = set_log_sink([&](LogLevel l, std::string_view msg) {
    if (l == LogLevel::kWarning) warnings.emplace_back(msg);
  });
  const auto m = parse_manifest(R"({"root": ".", "split": "test", "frames": []})", tmp.path());
  set_log_sink(prev);
  EXPECT_TRUE(m.frames.empty());
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Manifest, DanglingPathNamesTheFile) {
  testing::TempDir tmp;
  try {
    (void)parse_manifest(R"({"root": ".", "frames": [{"frame_id": "a", "rgb": "nope.png"}]})", tmp.path());
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("nope.png"), std::string::npos);
  }
}

TEST(Manifest, DuplicateAndUnsafeIdsRejected) {
  testing::TempDir tmp;
  write_png(tmp / "a.png", testing::textured(4, 4));
  EXPECT_THROW((void)parse_manifest(
                   R"({"frames": [{"frame_id": "a", "rgb": "a.png"}, {"frame_id": "a", "rgb": "a.png"}]})", tmp.path()),
               InvalidSpecError);
  EXPECT_THROW((void)parse_manifest(R"({"frames": [{"frame_id": "../a", "rgb": "a.png"}]})", tmp.path()),
               InvalidSpecError);
  EXPECT_THROW((void)parse_manifest(R"({"frames": 3})", tmp.path()), ParseError);
  EXPECT_THROW((void)parse_manifest("not json", tmp.path()), ParseError);
  EXPECT_THROW((void)load_manifest(tmp / "missing.json"), IoError);
}

TEST(Manifest, SafeIds) {
  EXPECT_TRUE(is_safe_frame_id("seq01_frame-0003.left"));
  EXPECT_FALSE(is_safe_frame_id(""));
  EXPECT_FALSE(is_safe_frame_id(".hidden"));
  EXPECT_FALSE(is_safe_frame_id("a/b"));
  EXPECT_FALSE(is_safe_frame_id("a b"));
  EXPECT_FALSE(is_safe_frame_id(std::string(129, 'a')));
}

TEST(Run, SeverityZeroAndEmptySetsRejected) {
  auto r = run_for("/tmp/x", {CorruptionType::kSmoke});
  r.severities = {0, 1};
  EXPECT_THROW(r.validate(), InvalidSpecError);
  r.severities = {};
  EXPECT_THROW(r.validate(), InvalidSpecError);
  r = run_for("/tmp/x", {});
  EXPECT_THROW(r.validate(), InvalidSpecError);
}

TEST(Generate, LayoutCardinalityAndReproducibility) {
  testing::TempDir tmp;
  const auto m = synth::write_dataset(tmp / "data", {.frames = 2, .width = 24, .height = 16});
  const std::vector<CorruptionType> types = {CorruptionType::kBrightness, CorruptionType::kGaussianNoise,
                                             CorruptionType::kJpegCompression};
  const auto a = generate_corrupted_tree(m, run_for(tmp / "a", types), SeverityParamTable::defaults());
  EXPECT_EQ(a.size(), 2u * 3u * 5u);
  EXPECT_TRUE(fs::exists(tmp / "a" / "gaussian_noise" / "3" / "frame_001.png"));
  EXPECT_EQ(read_index(tmp / "a" / std::string(kIndexFileName)).entries, a.entries);

  auto single = run_for(tmp / "b", types);
  single.workers = 1;
  const auto b = generate_corrupted_tree(m, single, SeverityParamTable::defaults());
  EXPECT_EQ(hashes(a), hashes(b));

  const auto c = generate_corrupted_tree(m, run_for(tmp / "c", types, 2), SeverityParamTable::defaults());
  for (const auto& [key, hash] : hashes(a)) {
    if (is_seed_independent(key.type)) {
      EXPECT_EQ(c.entries.at(key).sha256, hash);
    } else {
      EXPECT_NE(c.entries.at(key).sha256, hash);
    }
  }
}

TEST(Generate, HashIsOverDecodedPixels) {
  testing::TempDir tmp;
  const auto m = synth::write_dataset(tmp / "data", {.frames = 1, .width = 10, .height = 10});
  const auto index = generate_corrupted_tree(m, run_for(tmp / "out", {CorruptionType::kSmoke}),
                                             SeverityParamTable::defaults());
  for (const auto& [key, entry] : index.entries) {
    EXPECT_EQ(pixel_hash(read_rgb_image(tmp / "out" / entry.relative_path)), entry.sha256);
    EXPECT_EQ(entry.sha256.size(), 64u);
  }
}

TEST(Generate, ResumeSkipsJournalledEntries) {
  testing::TempDir tmp;
  const auto m = synth::write_dataset(tmp / "data", {.frames = 2, .width = 12, .height = 12});
  const auto run = run_for(tmp / "out", {CorruptionType::kImpulseNoise});
  const auto first = generate_corrupted_tree(m, run, SeverityParamTable::defaults());

  // Simulate an interruption: drop half the journal and a trailing partial line.
  const auto journal = tmp / "out" / std::string(kIndexFileName);
  const auto text = read_text_file(journal);
  std::size_t cut = 0;
  for (int i = 0; i < 4; ++i) cut = text.find('\n', cut) + 1;
  write_text_file(journal, text.substr(0, cut) + R"({"frame_id": "frame_00)");
  const auto kept = fs::last_write_time(tmp / "out" / "impulse_noise" / "1" / "frame_000.png");

  const auto second = generate_corrupted_tree(m, run, SeverityParamTable::defaults());
  EXPECT_EQ(hashes(second), hashes(first));
  EXPECT_EQ(fs::last_write_time(tmp / "out" / "impulse_noise" / "1" / "frame_000.png"), kept);
  EXPECT_EQ(read_index(journal).size(), first.size());
}

TEST(Generate, OutputRootMustDifferFromManifestRoot) {
  testing::TempDir tmp;
  const auto m = synth::write_dataset(tmp.path(), {.frames = 1, .width = 8, .height = 8});
  EXPECT_THROW((void)generate_corrupted_tree(m, run_for(tmp.path(), {CorruptionType::kSmoke}),
                                             SeverityParamTable::defaults()),
               InvalidSpecError);
}

TEST(Generate, CleanInputsAreUntouched) {
  testing::TempDir tmp;
  const auto m = synth::write_dataset(tmp / "data", {.frames = 2, .width = 8, .height = 8});
  const auto before = read_text_file(m.frames[0].rgb_path);
  (void)generate_corrupted_tree(m, run_for(tmp / "out", {CorruptionType::kPixelate}), SeverityParamTable::defaults());
  EXPECT_EQ(read_text_file(m.frames[0].rgb_path), before);
}

TEST(Generate, UnwritableRootNamesThePath) {
  testing::TempDir tmp;
  const auto m = synth::write_dataset(tmp / "data", {.frames = 1, .width = 8, .height = 8});
  { std::ofstream(tmp / "blocker") << "x"; }
  try {
    (void)generate_corrupted_tree(m, run_for(tmp / "blocker" / "out", {CorruptionType::kSmoke}),
                                  SeverityParamTable::defaults());
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("blocker"), std::string::npos);
  }
}

TEST(Generate, JpegDebugKeepsTheStream) {
  testing::TempDir tmp;
  const auto m = synth::write_dataset(tmp / "data", {.frames = 1, .width = 16, .height = 16});
  auto run = run_for(tmp / "out", {CorruptionType::kJpegCompression});
  run.emit_jpeg_debug = true;
  const auto index = generate_corrupted_tree(m, run, SeverityParamTable::defaults());
  EXPECT_TRUE(fs::exists(tmp / "out" / "jpeg_compression" / "2" / "frame_000.jpg"));
  // Same pixels with or without the debug stream.
  auto plain = run_for(tmp / "plain", {CorruptionType::kJpegCompression});
  EXPECT_EQ(hashes(generate_corrupted_tree(m, plain, SeverityParamTable::defaults())), hashes(index));
}

TEST(VerifyIndex, CleanTruncatedAndDeleted) {
  testing::TempDir tmp;
  const auto m = synth::write_dataset(tmp / "data", {.frames = 2, .width = 16, .height = 16});
  const auto index = generate_corrupted_tree(m, run_for(tmp / "out", {CorruptionType::kContrast}),
                                             SeverityParamTable::defaults());
  auto report = verify_index(index, tmp / "out");
  EXPECT_TRUE(report.clean());
  EXPECT_EQ(report.matches, 10u);

  const auto victim = tmp / "out" / "contrast" / "2" / "frame_001.png";
  fs::resize_file(victim, fs::file_size(victim) / 2);
  fs::remove(tmp / "out" / "contrast" / "4" / "frame_000.png");
  report = verify_index(index, tmp / "out");
  ASSERT_EQ(report.mismatches.size(), 1u);
  EXPECT_EQ(report.mismatches[0].key, (IndexKey{"frame_001", CorruptionType::kContrast, 2}));
  ASSERT_EQ(report.missing.size(), 1u);
  EXPECT_EQ(report.missing[0].key, (IndexKey{"frame_000", CorruptionType::kContrast, 4}));
  EXPECT_EQ(report.matches, 8u);
  EXPECT_NE(render_verification(report).find("8 matches, 1 mismatches, 1 missing"), std::string::npos);
}

TEST(Sha256, KnownDigest) {
  const std::string abc = "abc";
  EXPECT_EQ(sha256_hex({reinterpret_cast<const std::uint8_t*>(abc.data()), abc.size()}),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace endobench::dataset
