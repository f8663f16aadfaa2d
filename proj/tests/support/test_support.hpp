#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "endobench/image.hpp"
#include "endobench/synth.hpp"

namespace endobench::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "endobench-XXXXXX").string();
    if (mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = pattern;
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
  [[nodiscard]] std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline RgbImage textured(int width = 64, int height = 64) { return synth::textured_image(width, height); }

inline RgbImage constant_image(int width, int height, std::uint8_t value) {
  RgbImage im(width, height);
  for (auto& p : im.pixels()) p = value;
  return im;
}

}  // namespace endobench::testing
