#include <gtest/gtest.h>

#include "endobench/error.hpp"
#include "endobench/severity_params.hpp"
#include "endobench/text_io.hpp"

namespace endobench {
namespace {

TEST(SeverityParams, DefaultsCoverTheFullGridAndValidate) {
  const auto table = SeverityParamTable::defaults();
  for (auto t : all_corruption_types()) {
    for (int s = 1; s <= 5; ++s) EXPECT_TRUE(table.has_row(t, s)) << to_string(t) << " " << s;
  }
  EXPECT_NO_THROW(table.validate());
}

TEST(SeverityParams, BundledConfigEqualsDefaults) {
  const auto text = read_text_file(ENDOBENCH_CONFIG_DIR "/severity_params.json");
  EXPECT_EQ(text, SeverityParamTable::defaults().to_json_text());
  EXPECT_NO_THROW(SeverityParamTable::from_json_text(text).validate());
}

TEST(SeverityParams, JsonRoundTrip) {
  const auto table = SeverityParamTable::defaults();
  const auto again = SeverityParamTable::from_json_text(table.to_json_text());
  EXPECT_EQ(again.to_json_text(), table.to_json_text());
  EXPECT_EQ(again.version(), table.version());
}

TEST(SeverityParams, MagnitudeDirections) {
  const auto table = SeverityParamTable::defaults();
  for (auto t : all_corruption_types()) {
    const auto& schema = param_schema(t);
    for (int s = 1; s < 5; ++s) {
      const double a = table.get(t, s, schema.magnitude);
      const double b = table.get(t, s + 1, schema.magnitude);
      if (schema.direction == Monotonicity::kNonIncreasing) {
        EXPECT_GE(a, b) << to_string(t);
      } else {
        EXPECT_LE(a, b) << to_string(t);
      }
    }
  }
  EXPECT_EQ(param_schema(CorruptionType::kJpegCompression).direction, Monotonicity::kNonIncreasing);
}

TEST(SeverityParams, MissingRowIsConfigError) {
  auto table = SeverityParamTable::defaults();
  table.erase_row(CorruptionType::kSmoke, 3);
  EXPECT_FALSE(table.has_row(CorruptionType::kSmoke, 3));
  EXPECT_THROW(table.validate(), ConfigError);
  EXPECT_THROW((void)table.get(CorruptionType::kSmoke, 3, "strength"), ConfigError);
}

TEST(SeverityParams, NonMonotoneScheduleRejected) {
  auto table = SeverityParamTable::defaults();
  table.set(CorruptionType::kGaussianNoise, 4, "sigma", 0.01);
  EXPECT_THROW(table.validate(), ConfigError);
}

TEST(SeverityParams, MalformedConfigRejected) {
  EXPECT_THROW((void)SeverityParamTable::from_json_text("{"), ConfigError);
  EXPECT_THROW((void)SeverityParamTable::from_json_text(R"({"schema_version": 99})"), ConfigError);
}

}  // namespace
}  // namespace endobench
