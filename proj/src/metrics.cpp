#include "flicker/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flicker {

PredictedConfidenceMap::PredictedConfidenceMap(std::vector<Grid<double>> frames) : frames_(std::move(frames)) {
  for (auto& frame : frames_) {
    for (double& v : frame.values()) v = std::clamp(v, 0.0, 1.0);
  }
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double fa_mse(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) throw std::invalid_argument("fa_mse: prediction and truth differ in size");
  if (pred.empty()) throw std::invalid_argument("fa_mse: empty input");
  std::vector<double> squared(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - truth[i];
    squared[i] = d * d;
  }
  return pairwise_sum(squared) / static_cast<double>(squared.size());
}

double fa_mse(const PredictedConfidenceMap& pred, std::span<const AmplitudeMap> truth) {
  const auto& frames = pred.frames();
  if (frames.size() != truth.size()) throw std::invalid_argument("fa_mse: frame counts differ");
  std::vector<double> p;
  std::vector<double> t;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (!frames[i].same_shape(truth[i].values)) throw std::invalid_argument("fa_mse: frame shapes differ");
    p.insert(p.end(), frames[i].values().begin(), frames[i].values().end());
    t.insert(t.end(), truth[i].values.values().begin(), truth[i].values.values().end());
  }
  return fa_mse(p, t);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  }
  return out;
}

Matrix stack_rows(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw std::invalid_argument("stack_rows: column counts differ");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r) {
    for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
  }
  for (std::size_t r = 0; r < bottom.rows(); ++r) {
    for (std::size_t c = 0; c < bottom.cols(); ++c) out(top.rows() + r, c) = bottom(r, c);
  }
  return out;
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_difference: shapes differ");
  }
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
  }
  return worst;
}

Matrix InjectionWeights::combined() const {
  Matrix out(pretrained.rows(), pretrained.cols() + appended.cols());
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < pretrained.cols(); ++c) out(r, c) = pretrained(r, c);
    for (std::size_t c = 0; c < appended.cols(); ++c) out(r, pretrained.cols() + c) = appended(r, c);
  }
  return out;
}

InjectionWeights zero_init_augment(const Matrix& w4, std::size_t prior_cols) {
  for (std::size_t r = 0; r < w4.rows(); ++r) {
    for (std::size_t c = 0; c < w4.cols(); ++c) {
      if (!std::isfinite(w4(r, c))) throw std::invalid_argument("zero_init_augment: weights must be finite");
    }
  }
  return {w4, Matrix(w4.rows(), prior_cols, 0.0)};
}

InjectionWeights zero_init_augment(const Matrix& w4) {
  if (w4.cols() % 4 != 0) {
    throw std::invalid_argument("zero_init_augment: input width must be a multiple of 4 latent channels");
  }
  return zero_init_augment(w4, w4.cols() / 4);
}

double verify_injection_identity(const InjectionWeights& weights, const Matrix& x, const Matrix& prior) {
  if (weights.appended.rows() != weights.pretrained.rows()) {
    throw std::invalid_argument("verify_injection_identity: weight blocks differ in output size");
  }
  if (x.rows() != weights.pretrained.cols() || prior.rows() != weights.appended.cols() ||
      x.cols() != prior.cols()) {
    throw std::invalid_argument("verify_injection_identity: input shapes do not conform");
  }
  const Matrix widened = multiply(weights.combined(), stack_rows(x, prior));
  const Matrix original = multiply(weights.pretrained, x);
  return max_abs_difference(widened, original);
}

}  // namespace flicker
