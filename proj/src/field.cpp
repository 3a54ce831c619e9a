#include "flicker/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace flicker {

void FieldFrameContext::validate() const {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("frame dimensions must be at least 1x1, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

double wrap_angle(double theta) {
  if (theta >= -std::numbers::pi && theta < std::numbers::pi) return theta;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(theta + std::numbers::pi, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  wrapped -= std::numbers::pi;
  // fmod can land exactly on +pi after the shift back for inputs just below -pi.
  if (wrapped >= std::numbers::pi) wrapped -= two_pi;
  return wrapped;
}

LayerKinematics::LayerKinematics(double center_x, double center_y, double theta,
                                 double velocity_x, double velocity_y)
    : center_x_(center_x),
      center_y_(center_y),
      theta_(wrap_angle(theta)),
      velocity_x_(velocity_x),
      velocity_y_(velocity_y) {
  if (!std::isfinite(center_x) || !std::isfinite(center_y) || !std::isfinite(theta) ||
      !std::isfinite(velocity_x) || !std::isfinite(velocity_y)) {
    throw std::invalid_argument("layer kinematics must be finite");
  }
  sin_ = std::sin(theta_);
  cos_ = std::cos(theta_);
}

LayerKinematics LayerKinematics::frozen_at(double t) const {
  return LayerKinematics(center_x_ + velocity_x_ * t, center_y_ + velocity_y_ * t, theta_);
}

bool LayerKinematics::operator==(const LayerKinematics& other) const {
  return center_x_ == other.center_x_ && center_y_ == other.center_y_ &&
         theta_ == other.theta_ && velocity_x_ == other.velocity_x_ &&
         velocity_y_ == other.velocity_y_;
}

StripeBand::StripeBand(double width, double gap, double feather)
    : width_(width), gap_(gap), feather_(feather) {
  if (!std::isfinite(width) || !std::isfinite(gap) || !std::isfinite(feather)) {
    throw std::invalid_argument("stripe band parameters must be finite");
  }
  if (width < 1.0) throw std::invalid_argument("stripe width must be >= 1");
  if (gap < 0.0) throw std::invalid_argument("stripe gap must be >= 0");
  if (feather <= 0.0 || feather > width / 2.0) {
    throw std::invalid_argument("stripe feather must lie in (0, width/2]");
  }
}

double project_static(double x, double y, const LayerKinematics& kin) {
  return -(x - kin.center_x()) * kin.sin_theta() + (y - kin.center_y()) * kin.cos_theta();
}

double phase_shift(double t, const LayerKinematics& kin) {
  return -(kin.velocity_x() * t) * kin.sin_theta() + (kin.velocity_y() * t) * kin.cos_theta();
}

double orthogonal_coord(double x, double y, double t, const LayerKinematics& kin) {
  return project_static(x, y, kin) - phase_shift(t, kin);
}

double parallel_shift(double t, const LayerKinematics& kin) {
  return (kin.velocity_x() * t) * kin.cos_theta() + (kin.velocity_y() * t) * kin.sin_theta();
}

double parallel_coord(double x, double y, double t, const LayerKinematics& kin) {
  const double u_static = (x - kin.center_x()) * kin.cos_theta() + (y - kin.center_y()) * kin.sin_theta();
  return u_static - parallel_shift(t, kin);
}

StripeIndex stripe_index(double v, const StripeBand& band) {
  const double period = band.period();
  const double k = round_half_away(v / period);
  return {static_cast<std::int64_t>(k), k * period};
}

double smoothstep(double edge0, double edge1, double d) {
  if (!(edge0 < edge1)) throw std::invalid_argument("smoothstep requires edge0 < edge1");
  if (d <= edge0) return 0.0;
  if (d >= edge1) return 1.0;
  const double x = (d - edge0) / (edge1 - edge0);
  return x * x * (3.0 - 2.0 * x);
}

double uniform_occupancy_at(double v, const StripeBand& band) {
  const StripeIndex idx = stripe_index(v, band);
  const double d = std::abs(v - idx.center) - band.width() / 2.0;
  return feathered(d, band.feather());
}

double uniform_occupancy(double x, double y, double t, const LayerKinematics& kin,
                         const StripeBand& band) {
  return uniform_occupancy_at(orthogonal_coord(x, y, t, kin), band);
}

}  // namespace flicker
