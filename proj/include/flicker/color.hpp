// CIE L*a*b* (D65 white, sRGB transfer curve) on 8-bit code values.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "flicker/image.hpp"

namespace flicker {

struct Lab {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// Inputs are code values in [0, 255].
Lab srgb_to_lab(double r, double g, double b);
// Returns unclamped code values; out-of-gamut colors leave [0, 255].
std::array<double, 3> lab_to_srgb(const Lab& lab);

struct LabStats {
  std::array<double, 3> mean{};
  std::array<double, 3> stddev{};
};

// Requires three-channel images.
std::vector<Lab> to_lab(const Image& image);
LabStats lab_stats(std::span<const Lab> pixels);
LabStats lab_stats(const Image& image);
LabStats lab_stats(std::span<const Image> images);

}  // namespace flicker
