#include "endobench/depth.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "endobench/error.hpp"
#include "endobench/image_io.hpp"

namespace endobench::depth {
namespace {

constexpr double kPngScale = 256.0;

std::string lower_ext(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext;
}

}  // namespace

DepthMap::DepthMap(int width, int height, float fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw ShapeError("depth map dimensions must be >= 1");
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

DepthMap::DepthMap(int width, int height, std::vector<float> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width < 1 || height < 1) throw ShapeError("depth map dimensions must be >= 1");
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw ShapeError("depth buffer holds " + std::to_string(values_.size()) + " values, expected " +
                     std::to_string(static_cast<std::size_t>(width) * height));
  }
}

DepthMap read_png16(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw IoError("depth map not found: " + path.string());
  const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw IoError("cannot decode depth PNG " + path.string());
  if (mat.depth() != CV_16U || mat.channels() != 1) {
    throw IoError("depth PNG must be 16-bit single channel: " + path.string());
  }
  DepthMap out(mat.cols, mat.rows);
  for (int y = 0; y < mat.rows; ++y) {
    const auto* row = mat.ptr<std::uint16_t>(y);
    for (int x = 0; x < mat.cols; ++x) {
      out.at(x, y) = row[x] == 0 ? 0.0f : static_cast<float>(row[x] / kPngScale);
    }
  }
  return out;
}

void write_png16(const std::filesystem::path& path, const DepthMap& depth) {
  cv::Mat mat(depth.height(), depth.width(), CV_16UC1);
  for (int y = 0; y < depth.height(); ++y) {
    auto* row = mat.ptr<std::uint16_t>(y);
    for (int x = 0; x < depth.width(); ++x) {
      const float v = depth.at(x, y);
      if (std::isnan(v) || v == 0.0f) {
        row[x] = 0;
        continue;
      }
      const double q = std::nearbyint(static_cast<double>(v) * kPngScale);
      if (!std::isfinite(v) || v < 0.0f || q < 1.0 || q > 65535.0) {
        throw IoError("depth " + std::to_string(v) + " mm at (" + std::to_string(x) + ", " + std::to_string(y) +
                      ") is not representable in 16-bit PNG (use PFM): " + path.string());
      }
      row[x] = static_cast<std::uint16_t>(q);
    }
  }
  std::vector<std::uint8_t> bytes;
  if (!cv::imencode(".png", mat, bytes)) throw IoError("PNG encoding failed for " + path.string());
  write_bytes(path, bytes);
}

DepthMap read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("depth map not found: " + path.string());
  std::string magic;
  int width = 0;
  int height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  if (!in || (magic != "Pf" && magic != "PF")) throw IoError("malformed PFM header: " + path.string());
  if (width < 1 || height < 1) throw IoError("PFM has non-positive dimensions: " + path.string());
  in.get();  // single whitespace byte before the raster
  const int channels = magic == "PF" ? 3 : 1;
  const bool little = scale < 0.0;
  std::vector<char> raw(static_cast<std::size_t>(width) * height * channels * 4);
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw IoError("truncated PFM raster: " + path.string());

  DepthMap out(width, height);
  const bool swap = little != (std::endian::native == std::endian::little);
  for (int row = 0; row < height; ++row) {
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      const std::size_t offset = (static_cast<std::size_t>(row) * width + x) * channels * 4;
      std::uint32_t bits = 0;
      std::memcpy(&bits, raw.data() + offset, 4);
      if (swap) bits = __builtin_bswap32(bits);
      out.at(x, y) = std::bit_cast<float>(bits);
    }
  }
  return out;
}

void write_pfm(const std::filesystem::path& path, const DepthMap& depth) {
  std::ostringstream header;
  header << "Pf\n" << depth.width() << ' ' << depth.height() << "\n-1.0\n";
  const std::string h = header.str();
  std::vector<std::uint8_t> bytes(h.begin(), h.end());
  bytes.reserve(bytes.size() + depth.size() * 4);
  for (int row = 0; row < depth.height(); ++row) {
    const int y = depth.height() - 1 - row;
    for (int x = 0; x < depth.width(); ++x) {
      auto bits = std::bit_cast<std::uint32_t>(depth.at(x, y));
      if constexpr (std::endian::native != std::endian::little) bits = __builtin_bswap32(bits);
      for (int b = 0; b < 4; ++b) bytes.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
    }
  }
  write_bytes(path, bytes);
}

DepthMap read_depth(const std::filesystem::path& path) {
  const auto ext = lower_ext(path);
  if (ext == ".png") return read_png16(path);
  if (ext == ".pfm") return read_pfm(path);
  throw IoError("unsupported depth format '" + ext + "': " + path.string());
}

void write_depth(const std::filesystem::path& path, const DepthMap& depth) {
  const auto ext = lower_ext(path);
  if (ext == ".png") return write_png16(path, depth);
  if (ext == ".pfm") return write_pfm(path, depth);
  throw IoError("unsupported depth format '" + ext + "': " + path.string());
}

}  // namespace endobench::depth
