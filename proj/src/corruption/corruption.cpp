#include "endobench/corruption.hpp"

#include <string>

#include "endobench/error.hpp"
#include "endobench/image_io.hpp"
#include "transforms.hpp"

namespace endobench {

using detail::ParamRow;

JpegResult apply_jpeg_with_stream(const RgbImage& image, int severity, const SeverityParamTable& params) {
  const int quality = static_cast<int>(params.get(CorruptionType::kJpegCompression, severity, "quality"));
  JpegResult result;
  result.encoded = encode_jpeg(image, quality);
  result.decoded = decode_jpeg(result.encoded);
  return result;
}

RgbImage apply_corruption(const RgbImage& image, const CorruptionSpec& spec, const SeverityParamTable& params) {
  if (image.empty()) throw InvalidSpecError("cannot corrupt an empty image");
  if (static_cast<std::size_t>(spec.type) >= kNumCorruptionTypes) {
    throw InvalidSpecError("corruption type index " + std::to_string(static_cast<int>(spec.type)) + " is out of range");
  }
  const int severity = spec.severity.value();
  if (severity == 0) return image;
  if (!params.has_row(spec.type, severity)) {
    throw ConfigError("missing parameter row " + std::string(to_string(spec.type)) + "." + std::to_string(severity));
  }
  if (spec.type == CorruptionType::kJpegCompression) return apply_jpeg_with_stream(image, severity, params).decoded;

  const ParamRow row(params, spec.type, severity);
  const NoiseSource noise(spec.seed);
  const FloatImage clean = to_float(image);
  FloatImage out;
  switch (spec.type) {
    case CorruptionType::kBrightness: out = detail::brightness(clean, row); break;
    case CorruptionType::kDark: out = detail::dark(clean, row); break;
    case CorruptionType::kContrast: out = detail::contrast(clean, row); break;
    case CorruptionType::kDefocusBlur: out = detail::defocus_blur(clean, row); break;
    case CorruptionType::kMotionBlur: out = detail::motion_blur(clean, row, noise); break;
    case CorruptionType::kZoomBlur: out = detail::zoom_blur(clean, row); break;
    case CorruptionType::kGaussianBlur: out = detail::gaussian_blur(clean, row); break;
    case CorruptionType::kSmoke: out = detail::smoke(clean, row, noise); break;
    case CorruptionType::kSpatter: out = detail::spatter(clean, row, noise); break;
    case CorruptionType::kGaussianNoise: out = detail::gaussian_noise(clean, row, noise); break;
    case CorruptionType::kImpulseNoise: out = detail::impulse_noise(clean, row, noise); break;
    case CorruptionType::kShotNoise: out = detail::shot_noise(clean, row, noise); break;
    case CorruptionType::kIsoNoise: out = detail::iso_noise(clean, row, noise); break;
    case CorruptionType::kPixelate: out = detail::pixelate(clean, row); break;
    case CorruptionType::kColorQuant: out = detail::color_quant(clean, row); break;
    case CorruptionType::kJpegCompression: break;  // handled above
  }
  return to_rgb8(out);
}

}  // namespace endobench
