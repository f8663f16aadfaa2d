#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "endobench/image.hpp"

namespace endobench {

// Reads an 8-bit PNG (or any format the codec layer understands). Grayscale
// is expanded to RGB and alpha is dropped. Throws IoError naming the path.
[[nodiscard]] RgbImage read_rgb_image(const std::filesystem::path& path);

// Writes a PNG atomically (temp file + rename). Throws IoError naming the path.
void write_png(const std::filesystem::path& path, const RgbImage& image);

// Baseline JPEG, 4:2:0 chroma subsampling.
[[nodiscard]] std::vector<std::uint8_t> encode_jpeg(const RgbImage& image, int quality);
[[nodiscard]] RgbImage decode_jpeg(std::span<const std::uint8_t> bytes);

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace endobench
