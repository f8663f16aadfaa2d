#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace endobench {

// The sixteen corruption types, in taxonomy order. The numeric value is
// stable and participates in seed derivation; do not reorder.
enum class CorruptionType : std::uint8_t {
  kBrightness = 0,
  kDark,
  kContrast,
  kDefocusBlur,
  kMotionBlur,
  kZoomBlur,
  kGaussianBlur,
  kSmoke,
  kSpatter,
  kGaussianNoise,
  kImpulseNoise,
  kShotNoise,
  kIsoNoise,
  kJpegCompression,
  kPixelate,
  kColorQuant,
};

inline constexpr std::size_t kNumCorruptionTypes = 16;

enum class CorruptionCategory : std::uint8_t {
  kIlluminationVariability,
  kOpticDistortions,
  kVisualObstructions,
  kSensorElectronicNoise,
  kCompressionDigitalArtifacts,
};

[[nodiscard]] const std::array<CorruptionType, kNumCorruptionTypes>& all_corruption_types() noexcept;

[[nodiscard]] std::string_view to_string(CorruptionType type) noexcept;
[[nodiscard]] std::string_view to_string(CorruptionCategory category) noexcept;

[[nodiscard]] std::optional<CorruptionType> parse_corruption_type(std::string_view tag) noexcept;
// Same as parse_corruption_type but throws InvalidSpecError on unknown tags.
[[nodiscard]] CorruptionType corruption_type_from_tag(std::string_view tag);

[[nodiscard]] CorruptionCategory category_of(CorruptionType type) noexcept;

// True for types whose output does not depend on the seed.
[[nodiscard]] bool is_seed_independent(CorruptionType type) noexcept;

// Parses a comma-separated list of tags ("all" selects every type).
[[nodiscard]] std::vector<CorruptionType> parse_corruption_list(std::string_view csv);

// Severity 0 is the clean image, 1..5 are progressively stronger.
class SeverityLevel {
 public:
  static constexpr int kMax = 5;

  constexpr SeverityLevel() = default;
  // Throws InvalidSpecError outside [0, 5].
  explicit SeverityLevel(int level);

  [[nodiscard]] constexpr int value() const noexcept { return level_; }
  [[nodiscard]] constexpr bool is_clean() const noexcept { return level_ == 0; }

  friend constexpr auto operator<=>(SeverityLevel, SeverityLevel) = default;

 private:
  int level_ = 0;
};

struct CorruptionSpec {
  CorruptionType type = CorruptionType::kBrightness;
  SeverityLevel severity;
  std::uint64_t seed = 0;
};

}  // namespace endobench
