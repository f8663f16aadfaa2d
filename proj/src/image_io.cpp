#include "endobench/image_io.hpp"

#include <fstream>
#include <system_error>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "endobench/error.hpp"

namespace endobench {
namespace {

RgbImage from_bgr_mat(const cv::Mat& mat, const std::string& what) {
  if (mat.empty()) throw IoError("cannot decode image " + what);
  if (mat.depth() != CV_8U) throw IoError("expected an 8-bit image: " + what);
  RgbImage out(mat.cols, mat.rows);
  const int channels = mat.channels();
  for (int y = 0; y < mat.rows; ++y) {
    const auto* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mat.cols; ++x) {
      const auto* px = row + static_cast<std::ptrdiff_t>(x) * channels;
      if (channels == 1) {
        out.at(x, y, 0) = out.at(x, y, 1) = out.at(x, y, 2) = px[0];
      } else if (channels == 2) {  // gray + alpha
        out.at(x, y, 0) = out.at(x, y, 1) = out.at(x, y, 2) = px[0];
      } else {
        out.at(x, y, 0) = px[2];
        out.at(x, y, 1) = px[1];
        out.at(x, y, 2) = px[0];
      }
    }
  }
  return out;
}

cv::Mat to_bgr_mat(const RgbImage& image) {
  cv::Mat mat(image.height(), image.width(), CV_8UC3);
  for (int y = 0; y < image.height(); ++y) {
    auto* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < image.width(); ++x) {
      row[3 * x] = image.at(x, y, 2);
      row[3 * x + 1] = image.at(x, y, 1);
      row[3 * x + 2] = image.at(x, y, 0);
    }
  }
  return mat;
}

std::filesystem::path temp_sibling(const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  return tmp;
}

}  // namespace

RgbImage read_rgb_image(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw IoError("image not found: " + path.string());
  const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (!mat.empty() && mat.depth() == CV_16U) {
    cv::Mat eight;
    mat.convertTo(eight, CV_8U, 1.0 / 257.0);
    return from_bgr_mat(eight, path.string());
  }
  return from_bgr_mat(mat, path.string());
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  std::vector<std::uint8_t> bytes;
  try {
    if (!cv::imencode(".png", to_bgr_mat(image), bytes)) throw IoError("PNG encoding failed for " + path.string());
  } catch (const cv::Exception& e) {
    throw IoError("PNG encoding failed for " + path.string() + ": " + e.what());
  }
  write_bytes(path, bytes);
}

std::vector<std::uint8_t> encode_jpeg(const RgbImage& image, int quality) {
  std::vector<std::uint8_t> bytes;
  const std::vector<int> flags = {cv::IMWRITE_JPEG_QUALITY, quality, cv::IMWRITE_JPEG_PROGRESSIVE, 0,
                                  cv::IMWRITE_JPEG_OPTIMIZE, 0};
  if (!cv::imencode(".jpg", to_bgr_mat(image), bytes, flags)) throw IoError("JPEG encoding failed");
  return bytes;
}

RgbImage decode_jpeg(std::span<const std::uint8_t> bytes) {
  const cv::Mat buf(1, static_cast<int>(bytes.size()), CV_8U, const_cast<std::uint8_t*>(bytes.data()));
  return from_bgr_mat(cv::imdecode(buf, cv::IMREAD_COLOR), "JPEG stream");
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  const auto tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace endobench
