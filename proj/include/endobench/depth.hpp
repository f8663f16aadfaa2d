#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace endobench::depth {

// Depth in millimetres. Invalid cells hold 0 or NaN.
class DepthMap {
 public:
  DepthMap() = default;
  // Throws ShapeError if either dimension is < 1.
  DepthMap(int width, int height, float fill = 0.0f);
  DepthMap(int width, int height, std::vector<float> values);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

  [[nodiscard]] float at(int x, int y) const noexcept { return values_[static_cast<std::size_t>(y) * width_ + x]; }
  float& at(int x, int y) noexcept { return values_[static_cast<std::size_t>(y) * width_ + x]; }

  [[nodiscard]] std::span<const float> values() const noexcept { return values_; }
  [[nodiscard]] std::span<float> values() noexcept { return values_; }

  [[nodiscard]] bool same_shape(const DepthMap& o) const noexcept { return width_ == o.width_ && height_ == o.height_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<float> values_;
};

// 16-bit PNG, depth_mm = value / 256, value 0 = invalid. Depths that do not
// fit (>= 256 mm, negative, non-finite) are rejected with IoError on write.
[[nodiscard]] DepthMap read_png16(const std::filesystem::path& path);
void write_png16(const std::filesystem::path& path, const DepthMap& depth);

// Portable float map, single channel ("Pf"). Little-endian output (negative
// scale); both byte orders are read. Rows are stored bottom-to-top.
[[nodiscard]] DepthMap read_pfm(const std::filesystem::path& path);
void write_pfm(const std::filesystem::path& path, const DepthMap& depth);

// Dispatches on extension (.png / .pfm).
[[nodiscard]] DepthMap read_depth(const std::filesystem::path& path);
void write_depth(const std::filesystem::path& path, const DepthMap& depth);

}  // namespace endobench::depth
