#include <set>

#include <gtest/gtest.h>

#include "endobench/corruption_type.hpp"
#include "endobench/error.hpp"

namespace endobench {
namespace {

TEST(CorruptionType, SixteenDistinctTagsRoundTrip) {
  std::set<std::string_view> tags;
  for (auto t : all_corruption_types()) {
    tags.insert(to_string(t));
    EXPECT_EQ(parse_corruption_type(to_string(t)), t);
  }
  EXPECT_EQ(tags.size(), 16u);
}

TEST(CorruptionType, CategoriesFollowTheTaxonomy) {
  using C = CorruptionCategory;
  using T = CorruptionType;
  const std::map<C, std::set<T>> expected = {
      {C::kIlluminationVariability, {T::kBrightness, T::kDark, T::kContrast}},
      {C::kOpticDistortions, {T::kDefocusBlur, T::kMotionBlur, T::kZoomBlur, T::kGaussianBlur}},
      {C::kVisualObstructions, {T::kSmoke, T::kSpatter}},
      {C::kSensorElectronicNoise, {T::kGaussianNoise, T::kImpulseNoise, T::kShotNoise, T::kIsoNoise}},
      {C::kCompressionDigitalArtifacts, {T::kJpegCompression, T::kPixelate, T::kColorQuant}},
  };
  for (auto t : all_corruption_types()) EXPECT_TRUE(expected.at(category_of(t)).count(t)) << to_string(t);
}

TEST(CorruptionType, NineSeedIndependentTypes) {
  int n = 0;
  for (auto t : all_corruption_types()) n += is_seed_independent(t) ? 1 : 0;
  EXPECT_EQ(n, 9);
  EXPECT_FALSE(is_seed_independent(CorruptionType::kMotionBlur));
  EXPECT_TRUE(is_seed_independent(CorruptionType::kJpegCompression));
}

TEST(CorruptionType, UnknownTagIsInvalidSpec) {
  EXPECT_FALSE(parse_corruption_type("fog").has_value());
  EXPECT_THROW((void)corruption_type_from_tag("fog"), InvalidSpecError);
  EXPECT_THROW((void)parse_corruption_list("brightness,fog"), InvalidSpecError);
}

TEST(CorruptionType, ListParsingDeduplicates) {
  EXPECT_EQ(parse_corruption_list("all").size(), 16u);
  const auto two = parse_corruption_list("smoke,brightness,smoke");
  ASSERT_EQ(two.size(), 2u);
}

TEST(SeverityLevel, RangeIsZeroToFive) {
  EXPECT_THROW(SeverityLevel(-1), InvalidSpecError);
  EXPECT_THROW(SeverityLevel(6), InvalidSpecError);
  EXPECT_TRUE(SeverityLevel(0).is_clean());
  EXPECT_EQ(SeverityLevel(5).value(), 5);
}

}  // namespace
}  // namespace endobench
