// Stripe coordinate geometry shared by every banding kind.
//
// A layer is described in a rotated frame (u, v) anchored at the layer
// center: v runs along the stripe normal (-sin t, cos t) and u along the
// stripe direction (cos t, sin t). Constant-velocity motion translates the
// whole pattern rigidly, so both axes carry a time-dependent shift.

#pragma once

#include <cstdint>
#include <numbers>

#include "flicker/rounding.hpp"

namespace flicker {

struct FieldFrameContext {
  int width = 0;
  int height = 0;

  // Throws std::invalid_argument unless width, height >= 1.
  void validate() const;
  bool operator==(const FieldFrameContext&) const = default;
};

class LayerKinematics {
 public:
  LayerKinematics() = default;
  // Throws std::invalid_argument on non-finite input. theta is wrapped
  // into [-pi, pi).
  LayerKinematics(double center_x, double center_y, double theta,
                  double velocity_x = 0.0, double velocity_y = 0.0);

  double center_x() const { return center_x_; }
  double center_y() const { return center_y_; }
  double theta() const { return theta_; }
  double velocity_x() const { return velocity_x_; }
  double velocity_y() const { return velocity_y_; }
  double sin_theta() const { return sin_; }
  double cos_theta() const { return cos_; }

  // Same tilt, center advanced by t frames of motion, zero velocity.
  LayerKinematics frozen_at(double t) const;

  bool operator==(const LayerKinematics& other) const;

 private:
  double center_x_ = 0.0;
  double center_y_ = 0.0;
  double theta_ = 0.0;
  double velocity_x_ = 0.0;
  double velocity_y_ = 0.0;
  double sin_ = 0.0;
  double cos_ = 1.0;
};

double wrap_angle(double theta);

class StripeBand {
 public:
  StripeBand() = default;
  // Requires width >= 1, gap >= 0, 0 < feather <= width / 2.
  StripeBand(double width, double gap, double feather);

  double width() const { return width_; }
  double gap() const { return gap_; }
  double feather() const { return feather_; }
  double period() const { return width_ + gap_; }

  bool operator==(const StripeBand&) const = default;

 private:
  double width_ = 1.0;
  double gap_ = 0.0;
  double feather_ = 0.5;
};

struct StripeIndex {
  std::int64_t k = 0;
  double center = 0.0;
};

// Signed distance of (x, y) along the stripe normal, before motion.
double project_static(double x, double y, const LayerKinematics& kin);

// Normal-axis displacement accumulated after t frames.
double phase_shift(double t, const LayerKinematics& kin);

// v(t) = v_static - phase_shift(t)
double orthogonal_coord(double x, double y, double t, const LayerKinematics& kin);

// Stripe-direction displacement accumulated after t frames.
double parallel_shift(double t, const LayerKinematics& kin);

// Stripe-direction coordinate with the matching rigid motion applied.
double parallel_coord(double x, double y, double t, const LayerKinematics& kin);

// Nearest stripe (round half away from zero) and its center on the v axis.
StripeIndex stripe_index(double v, const StripeBand& band);

// Clamped cubic Hermite step. Throws std::invalid_argument if edge0 >= edge1.
double smoothstep(double edge0, double edge1, double d);

// Feathered occupancy for a signed boundary distance d (negative inside).
inline double feathered(double d, double feather) {
  if (d <= -feather) return 1.0;
  if (d >= feather) return 0.0;
  const double x = (d + feather) / (2.0 * feather);
  return 1.0 - x * x * (3.0 - 2.0 * x);
}

double uniform_occupancy(double x, double y, double t, const LayerKinematics& kin,
                         const StripeBand& band);

// Uniform occupancy given v directly; used by generators that already
// computed the orthogonal coordinate.
double uniform_occupancy_at(double v, const StripeBand& band);

}  // namespace flicker
