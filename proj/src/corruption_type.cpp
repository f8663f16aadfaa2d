#include "endobench/corruption_type.hpp"

#include <string>

#include "endobench/error.hpp"

namespace endobench {
namespace {

struct TypeInfo {
  CorruptionType type;
  std::string_view tag;
  CorruptionCategory category;
  bool seed_independent;
};

constexpr std::array<TypeInfo, kNumCorruptionTypes> kTypes{{
    {CorruptionType::kBrightness, "brightness", CorruptionCategory::kIlluminationVariability, true},
    {CorruptionType::kDark, "dark", CorruptionCategory::kIlluminationVariability, true},
    {CorruptionType::kContrast, "contrast", CorruptionCategory::kIlluminationVariability, true},
    {CorruptionType::kDefocusBlur, "defocus_blur", CorruptionCategory::kOpticDistortions, true},
    {CorruptionType::kMotionBlur, "motion_blur", CorruptionCategory::kOpticDistortions, false},
    {CorruptionType::kZoomBlur, "zoom_blur", CorruptionCategory::kOpticDistortions, true},
    {CorruptionType::kGaussianBlur, "gaussian_blur", CorruptionCategory::kOpticDistortions, true},
    {CorruptionType::kSmoke, "smoke", CorruptionCategory::kVisualObstructions, false},
    {CorruptionType::kSpatter, "spatter", CorruptionCategory::kVisualObstructions, false},
    {CorruptionType::kGaussianNoise, "gaussian_noise", CorruptionCategory::kSensorElectronicNoise, false},
    {CorruptionType::kImpulseNoise, "impulse_noise", CorruptionCategory::kSensorElectronicNoise, false},
    {CorruptionType::kShotNoise, "shot_noise", CorruptionCategory::kSensorElectronicNoise, false},
    {CorruptionType::kIsoNoise, "iso_noise", CorruptionCategory::kSensorElectronicNoise, false},
    {CorruptionType::kJpegCompression, "jpeg_compression", CorruptionCategory::kCompressionDigitalArtifacts, true},
    {CorruptionType::kPixelate, "pixelate", CorruptionCategory::kCompressionDigitalArtifacts, true},
    {CorruptionType::kColorQuant, "color_quant", CorruptionCategory::kCompressionDigitalArtifacts, true},
}};

const TypeInfo& info(CorruptionType type) noexcept { return kTypes[static_cast<std::size_t>(type)]; }

}  // namespace

const std::array<CorruptionType, kNumCorruptionTypes>& all_corruption_types() noexcept {
  static const auto types = [] {
    std::array<CorruptionType, kNumCorruptionTypes> out{};
    for (std::size_t i = 0; i < kTypes.size(); ++i) out[i] = kTypes[i].type;
    return out;
  }();
  return types;
}

std::string_view to_string(CorruptionType type) noexcept { return info(type).tag; }

std::string_view to_string(CorruptionCategory category) noexcept {
  switch (category) {
    case CorruptionCategory::kIlluminationVariability:
      return "Illumination Variability";
    case CorruptionCategory::kOpticDistortions:
      return "Optic Distortions";
    case CorruptionCategory::kVisualObstructions:
      return "Visual Obstructions";
    case CorruptionCategory::kSensorElectronicNoise:
      return "Sensor and Electronic Noise";
    case CorruptionCategory::kCompressionDigitalArtifacts:
      return "Data Compression and Digital Artifacts";
  }
  return "unknown";
}

std::optional<CorruptionType> parse_corruption_type(std::string_view tag) noexcept {
  for (const auto& t : kTypes) {
    if (t.tag == tag) return t.type;
  }
  return std::nullopt;
}

CorruptionType corruption_type_from_tag(std::string_view tag) {
  if (auto type = parse_corruption_type(tag)) return *type;
  throw InvalidSpecError("unknown corruption type '" + std::string(tag) + "'");
}

CorruptionCategory category_of(CorruptionType type) noexcept { return info(type).category; }

bool is_seed_independent(CorruptionType type) noexcept { return info(type).seed_independent; }

std::vector<CorruptionType> parse_corruption_list(std::string_view csv) {
  if (csv == "all") {
    const auto& all = all_corruption_types();
    return {all.begin(), all.end()};
  }
  std::vector<CorruptionType> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const auto token = csv.substr(start, comma == std::string_view::npos ? csv.npos : comma - start);
    if (token.empty()) throw InvalidSpecError("empty entry in corruption list '" + std::string(csv) + "'");
    const auto type = corruption_type_from_tag(token);
    bool seen = false;
    for (auto t : out) seen = seen || t == type;
    if (!seen) out.push_back(type);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

SeverityLevel::SeverityLevel(int level) : level_(level) {
  if (level < 0 || level > kMax) {
    throw InvalidSpecError("severity must be in [0, 5], got " + std::to_string(level));
  }
}

}  // namespace endobench
