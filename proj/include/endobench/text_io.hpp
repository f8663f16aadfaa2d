#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace endobench {

// Whole-file read. Throws IoError naming the path.
[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

// Atomic write (temp file + rename). Throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace endobench
