// Flicker-aware MSE between predicted confidence maps and ground-truth
// amplitude maps, and an exact check of zero-initialized channel injection.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "flicker/compositor.hpp"
#include "flicker/grid.hpp"

namespace flicker {

// Predicted banding confidence for a clip, clamped to [0, 1] on ingestion.
class PredictedConfidenceMap {
 public:
  PredictedConfidenceMap() = default;
  explicit PredictedConfidenceMap(std::vector<Grid<double>> frames);

  const std::vector<Grid<double>>& frames() const { return frames_; }

 private:
  std::vector<Grid<double>> frames_;
};

// Summation by recursive halving; the order depends only on the length.
double pairwise_sum(std::span<const double> values);

// Mean of squared differences over every element. Throws
// std::invalid_argument on length mismatch or empty input.
double fa_mse(std::span<const double> pred, std::span<const double> truth);
// Same over all frames; N is the element count across space and time.
double fa_mse(const PredictedConfidenceMap& pred, std::span<const AmplitudeMap> truth);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Inner products accumulate left to right over the shared dimension.
// Throws std::invalid_argument if the shapes do not conform.
Matrix multiply(const Matrix& a, const Matrix& b);
// [top; bottom]
Matrix stack_rows(const Matrix& top, const Matrix& bottom);
// Largest absolute entry of a - b.
double max_abs_difference(const Matrix& a, const Matrix& b);

// Input weights widened by a block of prior-map columns.
struct InjectionWeights {
  Matrix pretrained;  // out x n
  Matrix appended;    // out x d

  // [pretrained, appended]
  Matrix combined() const;
};

// Appends `prior_cols` zero columns. Throws std::invalid_argument on
// non-finite weights.
InjectionWeights zero_init_augment(const Matrix& w4, std::size_t prior_cols);
// Prior width inferred as one quarter of the input width (4 latent
// channels, 1 prior channel). Throws if cols is not a multiple of 4.
InjectionWeights zero_init_augment(const Matrix& w4);

// Infinity-norm of combined * [x; prior] - pretrained * x.
double verify_injection_identity(const InjectionWeights& weights, const Matrix& x, const Matrix& prior);

}  // namespace flicker
