#include "endobench/text_io.hpp"

#include <fstream>
#include <span>
#include <sstream>

#include "endobench/error.hpp"
#include "endobench/image_io.hpp"

namespace endobench {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  const auto* data = reinterpret_cast<const std::uint8_t*>(text.data());
  write_bytes(path, std::span<const std::uint8_t>(data, text.size()));
}

}  // namespace endobench
