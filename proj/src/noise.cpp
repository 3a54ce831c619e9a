#include "flicker/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flicker/rng.hpp"

namespace flicker {
namespace {

// Mirror padding without repeating the edge sample (d c b | a b c d | c b a).
int mirror_index(long i, int n) {
  const long period = 2L * (n - 1);
  long m = i % period;
  if (m < 0) m += period;
  return static_cast<int>(m < n ? m : period - m);
}

void convolve_mirror(const double* in, double* out, int n, std::ptrdiff_t stride,
                     const std::vector<double>& kernel) {
  const int radius = static_cast<int>(kernel.size() / 2);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    if (i >= radius && i + radius < n) {
      const double* p = in + (i - radius) * stride;
      for (double w : kernel) {
        acc += w * *p;
        p += stride;
      }
    } else {
      for (int j = -radius; j <= radius; ++j) {
        acc += kernel[static_cast<std::size_t>(j + radius)] * in[mirror_index(i + j, n) * stride];
      }
    }
    out[i * stride] = acc;
  }
}

}  // namespace

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian kernel sigma must be positive");
  }
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int j = -radius; j <= radius; ++j) {
    const double w = std::exp(-(static_cast<double>(j) * j) / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(j + radius)] = w;
    sum += w;
  }
  for (double& w : kernel) w /= sum;
  return kernel;
}

void zscore_normalize(std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double stddev = std::sqrt(sq / n);
  if (!(stddev > 1e-12)) {
    throw DegenerateNoiseError("smoothed noise is flat; cannot normalize to unit variance");
  }
  for (double& v : values) v = (v - mean) / stddev;
}

std::vector<double> smoothed_noise_1d(int length, double sigma, std::uint64_t seed) {
  if (length < 2) throw std::invalid_argument("smoothed_noise_1d: length must be >= 2");
  const std::vector<double> kernel = gaussian_kernel(sigma);

  CounterRng rng(seed);
  std::vector<double> white(static_cast<std::size_t>(length));
  for (double& x : white) x = rng.normal();

  std::vector<double> smooth(white.size());
  convolve_mirror(white.data(), smooth.data(), length, 1, kernel);
  zscore_normalize(smooth);
  return smooth;
}

Grid<double> smoothed_noise_2d(int width, int height, double sigma, std::uint64_t seed) {
  if (width < 2 || height < 2) {
    throw std::invalid_argument("smoothed_noise_2d: dimensions must be >= 2");
  }
  const std::vector<double> kernel = gaussian_kernel(sigma);

  CounterRng rng(seed);
  std::vector<double> white(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (double& x : white) x = rng.normal();

  std::vector<double> tmp(white.size());
  for (int y = 0; y < height; ++y) {
    const std::size_t off = static_cast<std::size_t>(y) * static_cast<std::size_t>(width);
    convolve_mirror(white.data() + off, tmp.data() + off, width, 1, kernel);
  }
  for (int x = 0; x < width; ++x) {
    convolve_mirror(tmp.data() + x, white.data() + x, height, width, kernel);
  }
  zscore_normalize(white);

  Grid<double> out(width, height);
  std::copy(white.begin(), white.end(), out.values().begin());
  return out;
}

double NoiseLine::at(double u) const {
  if (samples_.empty()) return 0.0;
  const double pos = u - origin_;
  const auto last = static_cast<double>(samples_.size() - 1);
  if (pos <= 0.0) return samples_.front();
  if (pos >= last) return samples_.back();
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
}

double NoiseSheet::at(double u, double v) const {
  if (samples_.empty()) return 0.0;
  const double pu = std::clamp((u - origin_u_) * inv_cell_, 0.0, static_cast<double>(samples_.width() - 1));
  const double pv = std::clamp((v - origin_v_) * inv_cell_, 0.0, static_cast<double>(samples_.height() - 1));
  const int iu = std::min(static_cast<int>(pu), samples_.width() - 2);
  const int iv = std::min(static_cast<int>(pv), samples_.height() - 2);
  const double fu = pu - iu;
  const double fv = pv - iv;
  const double top = samples_(iu, iv) + fu * (samples_(iu + 1, iv) - samples_(iu, iv));
  const double bottom = samples_(iu, iv + 1) + fu * (samples_(iu + 1, iv + 1) - samples_(iu, iv + 1));
  return top + fv * (bottom - top);
}

}  // namespace flicker
