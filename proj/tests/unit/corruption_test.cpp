#include <thread>

#include <gtest/gtest.h>

#include "endobench/corruption.hpp"
#include "endobench/error.hpp"
#include "endobench/image_io.hpp"
#include "test_support.hpp"

namespace endobench {
namespace {

const SeverityParamTable& params() {
  static const auto table = SeverityParamTable::defaults();
  return table;
}

RgbImage apply(const RgbImage& im, CorruptionType t, int severity, std::uint64_t seed) {
  return apply_corruption(im, CorruptionSpec{t, SeverityLevel(severity), seed}, params());
}

class PerType : public ::testing::TestWithParam<CorruptionType> {};

TEST_P(PerType, SeverityZeroIsIdentity) {
  const auto im = testing::textured();
  for (std::uint64_t seed : {0ULL, 7ULL, ~0ULL}) EXPECT_EQ(apply(im, GetParam(), 0, seed), im);
}

TEST_P(PerType, ShapePreservedAndDeterministic) {
  const auto im = testing::textured(37, 23);
  for (int s = 1; s <= 5; ++s) {
    const auto a = apply(im, GetParam(), s, 42);
    EXPECT_EQ(a.width(), im.width());
    EXPECT_EQ(a.height(), im.height());
    EXPECT_EQ(a, apply(im, GetParam(), s, 42)) << "severity " << s;
  }
}

TEST_P(PerType, SeedDependenceMatchesClassification) {
  const auto im = testing::textured();
  const auto a = apply(im, GetParam(), 3, 1);
  const auto b = apply(im, GetParam(), 3, 2);
  if (is_seed_independent(GetParam())) {
    EXPECT_EQ(a, b);
  } else {
    EXPECT_NE(a, b);
  }
}

TEST_P(PerType, PsnrNonIncreasingInSeverity) {
  const auto im = testing::textured();
  double previous = psnr(im, im);
  for (int s = 1; s <= 5; ++s) {
    const double p = psnr(im, apply(im, GetParam(), s, 42));
    EXPECT_LE(p, previous) << "severity " << s;
    previous = p;
  }
}

TEST_P(PerType, ActuallyChangesTheImage) {
  const auto im = testing::textured();
  EXPECT_NE(apply(im, GetParam(), 5, 42), im);
}

TEST_P(PerType, MissingParamsRowIsConfigError) {
  auto table = SeverityParamTable::defaults();
  table.erase_row(GetParam(), 2);
  EXPECT_THROW((void)apply_corruption(testing::textured(8, 8), {GetParam(), SeverityLevel(2), 0}, table), ConfigError);
}

INSTANTIATE_TEST_SUITE_P(AllTypes, PerType, ::testing::ValuesIn(all_corruption_types()),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Corruption, GaussianNoisePsnrStrictlyDecreases) {
  const auto im = testing::textured();
  double previous = psnr(im, im);
  for (int s = 1; s <= 5; ++s) {
    const double p = psnr(im, apply(im, CorruptionType::kGaussianNoise, s, 42));
    EXPECT_LT(p, previous) << "severity " << s;
    previous = p;
  }
}

TEST(Corruption, PixelateLeavesAConstantImageAlone) {
  const auto gray = testing::constant_image(32, 32, 128);
  EXPECT_EQ(apply(gray, CorruptionType::kPixelate, 5, 0), gray);
}

TEST(Corruption, OutOfRangeTypeIsInvalidSpec) {
  const CorruptionSpec spec{static_cast<CorruptionType>(16), SeverityLevel(1), 0};
  EXPECT_THROW((void)apply_corruption(testing::textured(8, 8), spec, params()), InvalidSpecError);
}

TEST(Corruption, ConcurrentCallsMatchSequential) {
  const auto im = testing::textured();
  const auto& types = all_corruption_types();
  std::vector<RgbImage> sequential;
  for (auto t : types) sequential.push_back(apply(im, t, 4, 99));
  std::vector<RgbImage> parallel(types.size());
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < 8; ++w) {
    threads.emplace_back([&, w] {
      for (std::size_t i = w; i < types.size(); i += 8) parallel[i] = apply(im, types[i], 4, 99);
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(parallel, sequential);
}

TEST(Corruption, JpegStreamDecodesToTheReturnedImage) {
  const auto im = testing::textured();
  const auto r = apply_jpeg_with_stream(im, 3, params());
  ASSERT_FALSE(r.encoded.empty());
  EXPECT_EQ(r.encoded[0], 0xFF);
  EXPECT_EQ(r.encoded[1], 0xD8);
  EXPECT_EQ(decode_jpeg(r.encoded), r.decoded);
  EXPECT_EQ(r.decoded, apply(im, CorruptionType::kJpegCompression, 3, 0));
}

TEST(Corruption, BrightnessRaisesAndDarkLowersMeanLevel) {
  const auto im = testing::textured();
  auto mean = [](const RgbImage& x) {
    double s = 0;
    for (auto p : x.pixels()) s += p;
    return s / static_cast<double>(x.pixels().size());
  };
  EXPECT_GT(mean(apply(im, CorruptionType::kBrightness, 2, 0)), mean(im));
  EXPECT_LT(mean(apply(im, CorruptionType::kDark, 2, 0)), mean(im));
}

}  // namespace
}  // namespace endobench
