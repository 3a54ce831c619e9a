// Frame-sequence directories: numbered 8-bit images, amplitude maps and raw
// float fields. All failures surface as IoError.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "flicker/grid.hpp"
#include "flicker/image.hpp"

namespace flicker {

namespace fs = std::filesystem;

// "000042.png"
std::string frame_file_name(int index);

// Image files (png, jpg, jpeg, bmp) directly inside `dir`, sorted by name.
std::vector<fs::path> list_frames(const fs::path& dir);

// channels: 3 forces RGB, 1 forces grayscale.
Image read_image(const fs::path& path, int channels);
std::vector<Image> read_frames(const std::vector<fs::path>& paths, int channels);

// Lossless PNG, low compression effort.
void write_png(const fs::path& path, const Image& image);

// Grayscale Portable Float Map ("Pf", little-endian, bottom-up rows).
void write_pfm(const fs::path& path, const Grid<double>& field);
Grid<double> read_pfm(const fs::path& path);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace flicker
