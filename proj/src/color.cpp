#include "flicker/color.hpp"

#include <cmath>
#include <stdexcept>

namespace flicker {
namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

constexpr Mat3 kRgbToXyz = {{{0.4124564, 0.3575761, 0.1804375},
                             {0.2126729, 0.7151522, 0.0721750},
                             {0.0193339, 0.1191920, 0.9503041}}};
constexpr std::array<double, 3> kWhite = {0.95047, 1.0, 1.08883};
constexpr double kDelta = 6.0 / 29.0;

Mat3 invert(const Mat3& m) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  Mat3 inv{};
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

const Mat3& xyz_to_rgb() {
  static const Mat3 inv = invert(kRgbToXyz);
  return inv;
}

double decode(double code) {
  const double c = code / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double encode(double linear) {
  const double mag = std::abs(linear);
  const double c = mag <= 0.0031308 ? 12.92 * mag : 1.055 * std::pow(mag, 1.0 / 2.4) - 0.055;
  return std::copysign(c, linear) * 255.0;
}

double lab_f(double t) {
  return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double t) { return t > kDelta ? t * t * t : 3.0 * kDelta * kDelta * (t - 4.0 / 29.0); }

}  // namespace

double luma(const Image& image, int x, int y) {
  if (image.channels() == 1) return image.at(x, y);
  return 0.299 * image.at(x, y, 0) + 0.587 * image.at(x, y, 1) + 0.114 * image.at(x, y, 2);
}

Lab srgb_to_lab(double r, double g, double b) {
  const std::array<double, 3> lin = {decode(r), decode(g), decode(b)};
  std::array<double, 3> xyz{};
  for (int i = 0; i < 3; ++i) {
    xyz[i] = kRgbToXyz[i][0] * lin[0] + kRgbToXyz[i][1] * lin[1] + kRgbToXyz[i][2] * lin[2];
  }
  const double fx = lab_f(xyz[0] / kWhite[0]);
  const double fy = lab_f(xyz[1] / kWhite[1]);
  const double fz = lab_f(xyz[2] / kWhite[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::array<double, 3> lab_to_srgb(const Lab& lab) {
  const double fy = (lab.l + 16.0) / 116.0;
  const double fx = fy + lab.a / 500.0;
  const double fz = fy - lab.b / 200.0;
  const std::array<double, 3> xyz = {kWhite[0] * lab_f_inv(fx), kWhite[1] * lab_f_inv(fy),
                                     kWhite[2] * lab_f_inv(fz)};
  const Mat3& m = xyz_to_rgb();
  std::array<double, 3> rgb{};
  for (int i = 0; i < 3; ++i) rgb[i] = encode(m[i][0] * xyz[0] + m[i][1] * xyz[1] + m[i][2] * xyz[2]);
  return rgb;
}

std::vector<Lab> to_lab(const Image& image) {
  if (image.channels() != 3) throw std::invalid_argument("LAB conversion needs a three-channel image");
  std::vector<Lab> out;
  out.reserve(image.pixel_count());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      out.push_back(srgb_to_lab(image.at(x, y, 0), image.at(x, y, 1), image.at(x, y, 2)));
    }
  }
  return out;
}

LabStats lab_stats(std::span<const Lab> pixels) {
  if (pixels.empty()) throw std::invalid_argument("lab_stats: no pixels");
  LabStats s;
  const auto n = static_cast<double>(pixels.size());
  for (const Lab& p : pixels) {
    s.mean[0] += p.l;
    s.mean[1] += p.a;
    s.mean[2] += p.b;
  }
  for (double& m : s.mean) m /= n;
  std::array<double, 3> sq{};
  for (const Lab& p : pixels) {
    const std::array<double, 3> v = {p.l, p.a, p.b};
    for (int c = 0; c < 3; ++c) sq[c] += (v[c] - s.mean[c]) * (v[c] - s.mean[c]);
  }
  for (int c = 0; c < 3; ++c) s.stddev[c] = std::sqrt(sq[c] / n);
  return s;
}

LabStats lab_stats(const Image& image) { return lab_stats(to_lab(image)); }

LabStats lab_stats(std::span<const Image> images) {
  std::vector<Lab> all;
  for (const Image& image : images) {
    const std::vector<Lab> lab = to_lab(image);
    all.insert(all.end(), lab.begin(), lab.end());
  }
  return lab_stats(all);
}

}  // namespace flicker
