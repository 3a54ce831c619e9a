// Band-limited Gaussian noise: white noise smoothed by a truncated Gaussian
// kernel (radius ceil(3 sigma), mirror padding) and Z-score normalized.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "flicker/grid.hpp"

namespace flicker {

class DegenerateNoiseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Normalized discrete Gaussian of radius ceil(3 sigma).
std::vector<double> gaussian_kernel(double sigma);

// Throws std::invalid_argument if length < 2 or sigma <= 0, and
// DegenerateNoiseError if the smoothed signal has no variance left.
std::vector<double> smoothed_noise_1d(int length, double sigma, std::uint64_t seed);

// Separable smoothing over a width x height grid, normalized over the whole
// field. Throws std::invalid_argument if either dimension is < 2.
Grid<double> smoothed_noise_2d(int width, int height, double sigma, std::uint64_t seed);

// Subtracts the mean and divides by the population standard deviation.
void zscore_normalize(std::vector<double>& values);

// 1D noise sampled at unit spacing starting at `origin`, read back with
// linear interpolation and clamped at both ends.
class NoiseLine {
 public:
  NoiseLine() = default;
  NoiseLine(double origin, std::vector<double> samples)
      : origin_(origin), samples_(std::move(samples)) {}

  double at(double u) const;
  double origin() const { return origin_; }
  const std::vector<double>& samples() const { return samples_; }

 private:
  double origin_ = 0.0;
  std::vector<double> samples_;
};

// 2D noise on a square lattice of spacing `cell`, bilinear readback.
class NoiseSheet {
 public:
  NoiseSheet() = default;
  NoiseSheet(double origin_u, double origin_v, double cell, Grid<double> samples)
      : origin_u_(origin_u), origin_v_(origin_v), inv_cell_(1.0 / cell), samples_(std::move(samples)) {}

  double at(double u, double v) const;
  const Grid<double>& samples() const { return samples_; }

 private:
  double origin_u_ = 0.0;
  double origin_v_ = 0.0;
  double inv_cell_ = 1.0;
  Grid<double> samples_;
};

}  // namespace flicker
