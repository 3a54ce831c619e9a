#include "flicker/frame_io.hpp"

#include <algorithm>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <png.h>
#include <zlib.h>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "flicker/errors.hpp"

namespace flicker {

std::string frame_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06d.png", index);
  return buf;
}

std::vector<fs::path> list_frames(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> frames;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp") frames.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(frames.begin(), frames.end());
  return frames;
}

Image read_image(const fs::path& path, int channels) {
  const cv::Mat mat = cv::imread(path.string(), channels == 1 ? cv::IMREAD_GRAYSCALE : cv::IMREAD_COLOR);
  if (mat.empty()) throw IoError("cannot decode image " + path.string());
  if (mat.depth() != CV_8U) throw IoError("expected an 8-bit image: " + path.string());
  Image image(mat.cols, mat.rows, mat.channels());
  for (int y = 0; y < mat.rows; ++y) {
    const std::uint8_t* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mat.cols; ++x) {
      if (mat.channels() == 1) {
        image.at(x, y) = row[x];
      } else {
        // OpenCV stores BGR.
        image.at(x, y, 0) = row[3 * x + 2];
        image.at(x, y, 1) = row[3 * x + 1];
        image.at(x, y, 2) = row[3 * x + 0];
      }
    }
  }
  return image;
}

std::vector<Image> read_frames(const std::vector<fs::path>& paths, int channels) {
  std::vector<Image> frames;
  frames.reserve(paths.size());
  for (const auto& p : paths) {
    frames.push_back(read_image(p, channels));
    if (!frames.back().same_shape(frames.front())) {
      throw IoError("frame " + p.string() + " differs in size from the first frame of its sequence");
    }
  }
  return frames;
}

void write_png(const fs::path& path, const Image& image) {
  if (image.channels() != 1 && image.channels() != 3) throw IoError("only 1- or 3-channel images are written");
  std::FILE* file = std::fopen(path.string().c_str(), "wb");
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    std::fclose(file);
    throw IoError("cannot allocate a PNG encoder for " + path.string());
  }
  const auto stride = static_cast<std::size_t>(image.width()) * static_cast<std::size_t>(image.channels());
  const std::uint8_t* pixels = image.bytes().data();
  // No C++ objects with destructors may be live across the longjmp below.
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(file);
    throw IoError("cannot encode " + path.string());
  }
  png_init_io(png, file);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.width()), static_cast<png_uint_32>(image.height()), 8,
               image.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  // Fixed SUB filter with run-length deflate; adaptive filtering costs ~4x the
  // encode time and compresses banded frames no better.
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_SUB);
  png_set_compression_level(png, 1);
  png_set_compression_strategy(png, Z_RLE);
  png_write_info(png, info);
  for (int y = 0; y < image.height(); ++y) {
    png_write_row(png, pixels + static_cast<std::size_t>(y) * stride);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fclose(file) != 0) throw IoError("failed writing " + path.string());
}

void write_pfm(const fs::path& path, const Grid<double>& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "Pf\n" << field.width() << ' ' << field.height() << "\n-1.0\n";
  std::vector<float> row(static_cast<std::size_t>(field.width()));
  for (int y = field.height() - 1; y >= 0; --y) {
    auto src = field.row(y);
    std::transform(src.begin(), src.end(), row.begin(), [](double v) { return static_cast<float>(v); });
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw IoError("failed writing " + path.string());
}

Grid<double> read_pfm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string magic;
  int width = 0;
  int height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  in.get();
  if (magic != "Pf" || width < 1 || height < 1 || scale >= 0.0) {
    throw IoError("unsupported PFM header in " + path.string());
  }
  Grid<double> field(width, height);
  std::vector<float> row(static_cast<std::size_t>(width));
  for (int y = height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in) throw IoError("truncated PFM " + path.string());
    std::copy(row.begin(), row.end(), field.row(y).begin());
  }
  return field;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace flicker
