#pragma once

#include <cstdint>
#include <vector>

#include "endobench/corruption_type.hpp"
#include "endobench/image.hpp"
#include "endobench/severity_params.hpp"

namespace endobench {

// Applies one corruption. Severity 0 returns a bit-identical copy. The result
// is a pure function of (image, spec, params): same inputs, same bytes.
//
// Throws InvalidSpecError for an empty image or an out-of-range type and
// ConfigError when `params` lacks the (type, severity) row.
[[nodiscard]] RgbImage apply_corruption(const RgbImage& image, const CorruptionSpec& spec,
                                        const SeverityParamTable& params);

struct JpegResult {
  RgbImage decoded;
  std::vector<std::uint8_t> encoded;
};

// JPEG round trip at the severity's quality, keeping the encoded stream.
[[nodiscard]] JpegResult apply_jpeg_with_stream(const RgbImage& image, int severity,
                                                const SeverityParamTable& params);

}  // namespace endobench
