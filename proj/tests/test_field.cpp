#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "flicker/field.hpp"
#include "flicker/rng.hpp"
#include "flicker/rounding.hpp"

namespace flicker {
namespace {

constexpr double kPi = std::numbers::pi;

// Oracle: stripe normal from a complex rotation, independent of the
// sin/cos expansion used by the library.
double normal_dot(double theta, double px, double py) {
  const std::complex<double> n = std::polar(1.0, theta + kPi / 2.0);
  return n.real() * px + n.imag() * py;
}

// Oracle: nearest multiple of T by linear search; ties go away from zero.
std::int64_t nearest_stripe(double v, double period) {
  std::int64_t best = 0;
  double best_gap = std::abs(v);
  for (std::int64_t k = -1000; k <= 1000; ++k) {
    const double gap = std::abs(v - static_cast<double>(k) * period);
    if (gap < best_gap || (gap == best_gap && std::abs(k) > std::abs(best))) {
      best = k;
      best_gap = gap;
    }
  }
  return best;
}

TEST(FieldFrameContext, RejectsEmptyFrames) {
  EXPECT_NO_THROW((FieldFrameContext{1, 1}.validate()));
  EXPECT_THROW((FieldFrameContext{0, 5}.validate()), std::invalid_argument);
  EXPECT_THROW((FieldFrameContext{5, -1}.validate()), std::invalid_argument);
}

TEST(LayerKinematics, WrapsThetaIntoHalfOpenRange) {
  EXPECT_DOUBLE_EQ(LayerKinematics(0, 0, 1.5 * kPi).theta(), -0.5 * kPi);
  EXPECT_DOUBLE_EQ(LayerKinematics(0, 0, kPi).theta(), -kPi);
  EXPECT_DOUBLE_EQ(LayerKinematics(0, 0, -kPi).theta(), -kPi);
  EXPECT_DOUBLE_EQ(LayerKinematics(0, 0, -7.0 * kPi / 2.0).theta(), kPi / 2.0);
  CounterRng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double theta = rng.uniform(-40.0, 40.0);
    const double wrapped = LayerKinematics(0, 0, theta).theta();
    EXPECT_GE(wrapped, -kPi);
    EXPECT_LT(wrapped, kPi);
    EXPECT_NEAR(std::remainder(theta - wrapped, 2.0 * kPi), 0.0, 1e-12);
  }
}

TEST(LayerKinematics, KeepsInRangeThetaBitExact) {
  CounterRng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const double theta = rng.uniform(-kPi, kPi);
    EXPECT_EQ(LayerKinematics(0, 0, theta).theta(), theta);
  }
}

TEST(LayerKinematics, RejectsNonFiniteFields) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(LayerKinematics(nan, 0, 0), std::invalid_argument);
  EXPECT_THROW(LayerKinematics(0, inf, 0), std::invalid_argument);
  EXPECT_THROW(LayerKinematics(0, 0, nan), std::invalid_argument);
  EXPECT_THROW(LayerKinematics(0, 0, 0, inf, 0), std::invalid_argument);
  EXPECT_THROW(LayerKinematics(0, 0, 0, 0, -inf), std::invalid_argument);
}

TEST(StripeBand, PeriodIsWidthPlusGap) {
  const StripeBand band(7.5, 4.25, 1.0);
  EXPECT_EQ(band.period(), 11.75);
}

TEST(StripeBand, RejectsInvalidGeometry) {
  EXPECT_THROW(StripeBand(0.5, 1, 0.1), std::invalid_argument);
  EXPECT_THROW(StripeBand(4, -1, 1), std::invalid_argument);
  EXPECT_THROW(StripeBand(4, 1, 0), std::invalid_argument);
  EXPECT_THROW(StripeBand(4, 1, 2.0001), std::invalid_argument);
  EXPECT_NO_THROW(StripeBand(4, 0, 2));
}

TEST(ProjectStatic, Examples) {
  EXPECT_EQ(project_static(3, 5, LayerKinematics(0, 0, 0)), 5.0);
  EXPECT_EQ(project_static(12.5, -3, LayerKinematics(12.5, -3, 0.7)), 0.0);
  EXPECT_NEAR(project_static(1, 1, LayerKinematics(0, 0, kPi / 4)), 0.0, 1e-15);
}

TEST(PhaseShift, Examples) {
  EXPECT_EQ(phase_shift(0, LayerKinematics(4, 2, 0.3, 5, -2)), 0.0);

  // v = (2, 0), theta = pi/2, t = 3.
  const double a = normal_dot(kPi / 2, 2 * 3, 0);
  EXPECT_NEAR(a, -6.0, 1e-12);
  EXPECT_NEAR(phase_shift(3, LayerKinematics(0, 0, kPi / 2, 2, 0)), -6.0, 1e-12);

  // v = (0, 4), theta = 0, t = 2.
  const double b = normal_dot(0, 0, 4 * 2);
  EXPECT_NEAR(b, 8.0, 1e-12);
  EXPECT_EQ(phase_shift(2, LayerKinematics(0, 0, 0, 0, 4)), 8.0);
}

TEST(PhaseShift, MatchesRotationOracle) {
  CounterRng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const LayerKinematics kin(rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-kPi, kPi),
                              rng.uniform(-8, 8), rng.uniform(-8, 8));
    const double t = rng.uniform(0, 100);
    EXPECT_NEAR(phase_shift(t, kin), normal_dot(kin.theta(), kin.velocity_x() * t, kin.velocity_y() * t), 1e-9);
    const double x = rng.uniform(-300, 300);
    const double y = rng.uniform(-300, 300);
    EXPECT_NEAR(project_static(x, y, kin), normal_dot(kin.theta(), x - kin.center_x(), y - kin.center_y()), 1e-9);
  }
}

TEST(OrthogonalCoord, Examples) {
  const LayerKinematics still(3, 4, 0.9);
  EXPECT_EQ(orthogonal_coord(10, -2, 0, still), project_static(10, -2, still));
  EXPECT_EQ(orthogonal_coord(10, -2, 37, still), project_static(10, -2, still));

  // Center pixel, v = (1, 0), theta = pi/2, t = 5: 0 - (-5).
  const LayerKinematics moving(0, 0, kPi / 2, 1, 0);
  EXPECT_NEAR(orthogonal_coord(0, 0, 5, moving), 5.0, 1e-12);

  const LayerKinematics k(1, 2, 0.4, 0.5, -1.5);
  EXPECT_EQ(orthogonal_coord(7, 9, 0, k), project_static(7, 9, k));
}

TEST(ParallelCoord, IsOrthogonalToTheNormalAxis) {
  CounterRng rng(14);
  for (int i = 0; i < 500; ++i) {
    const LayerKinematics kin(rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-kPi, kPi),
                              rng.uniform(-8, 8), rng.uniform(-8, 8));
    const double x = rng.uniform(-200, 200);
    const double y = rng.uniform(-200, 200);
    const double t = rng.uniform(0, 20);
    const double u = parallel_coord(x, y, t, kin);
    const double v = orthogonal_coord(x, y, t, kin);
    // (u, v) is a rotation of the moving-frame offset, so lengths agree.
    const double rx = x - kin.center_x() - kin.velocity_x() * t;
    const double ry = y - kin.center_y() - kin.velocity_y() * t;
    EXPECT_NEAR(std::hypot(u, v), std::hypot(rx, ry), 1e-9);
  }
}

TEST(StripeIndex, Examples) {
  const StripeBand band(5, 7, 1);
  auto [k0, c0] = stripe_index(0.0, band);
  EXPECT_EQ(k0, 0);
  EXPECT_EQ(c0, 0.0);

  EXPECT_EQ(nearest_stripe(25, 12), 2);
  auto [k1, c1] = stripe_index(25.0, band);
  EXPECT_EQ(k1, 2);
  EXPECT_EQ(c1, 24.0);

  EXPECT_EQ(nearest_stripe(-7, 12), -1);
  auto [k2, c2] = stripe_index(-7.0, band);
  EXPECT_EQ(k2, -1);
  EXPECT_EQ(c2, -12.0);
}

TEST(StripeIndex, TiesRoundAwayFromZero) {
  const StripeBand band(5, 7, 1);
  EXPECT_EQ(stripe_index(6.0, band).k, 1);
  EXPECT_EQ(stripe_index(-6.0, band).k, -1);
  EXPECT_EQ(stripe_index(18.0, band).k, 2);
  EXPECT_EQ(stripe_index(-18.0, band).k, -2);
}

TEST(StripeIndex, MatchesSearchOracleAndResidualBound) {
  CounterRng rng(15);
  for (int i = 0; i < 10000; ++i) {
    const StripeBand band(rng.uniform(1, 40), rng.uniform(0, 60), 0.5);
    const double v = rng.uniform(-2000, 2000);
    const StripeIndex idx = stripe_index(v, band);
    EXPECT_LE(std::abs(v - idx.center), band.period() / 2.0 + 1e-9);
    if (i < 500) EXPECT_EQ(idx.k, nearest_stripe(v, band.period()));
  }
}

TEST(Smoothstep, Examples) {
  EXPECT_EQ(smoothstep(-1, 1, -2), 0.0);
  EXPECT_EQ(smoothstep(-1, 1, 0), 0.5);
  const double x = 0.75;
  EXPECT_EQ(3 * x * x - 2 * x * x * x, 0.84375);
  EXPECT_DOUBLE_EQ(smoothstep(-1, 1, 0.5), 0.84375);
  EXPECT_EQ(smoothstep(-1, 1, 1), 1.0);
  EXPECT_EQ(smoothstep(-1, 1, 5), 1.0);
}

TEST(Smoothstep, RejectsCollapsedEdges) {
  EXPECT_THROW(smoothstep(1, 1, 0), std::invalid_argument);
  EXPECT_THROW(smoothstep(2, 1, 0), std::invalid_argument);
}

TEST(Smoothstep, IsMonotoneOnSampledGrids) {
  CounterRng rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const double e0 = rng.uniform(-10, 10);
    const double e1 = e0 + rng.uniform(1e-6, 10);
    double prev = smoothstep(e0, e1, e0 - 1);
    for (int i = 0; i <= 2000; ++i) {
      const double d = e0 - 1 + (e1 - e0 + 2) * i / 2000.0;
      const double s = smoothstep(e0, e1, d);
      EXPECT_GE(s, prev);
      prev = s;
    }
  }
}

TEST(Feathered, IsOneMinusSmoothstep) {
  CounterRng rng(17);
  for (int i = 0; i < 5000; ++i) {
    const double f = rng.uniform(1e-3, 10);
    const double d = rng.uniform(-15, 15);
    EXPECT_NEAR(feathered(d, f), 1.0 - smoothstep(-f, f, d), 1e-12);
  }
}

TEST(UniformOccupancy, Examples) {
  const StripeBand band(10, 6, 1);
  const LayerKinematics kin(0, 0, 0);
  // Stripe center.
  EXPECT_EQ(uniform_occupancy(4, 0, 0, kin, band), 1.0);
  // |v - v_c| = W/2.
  EXPECT_EQ(uniform_occupancy(4, 5, 0, kin, band), 0.5);
  // |v - v_c| = W/2 + 2f.
  EXPECT_EQ(uniform_occupancy(4, 7, 0, kin, band), 0.0);
  EXPECT_EQ(uniform_occupancy(4, -7, 0, kin, band), 0.0);
}

TEST(UniformOccupancy, StaysInUnitRange) {
  CounterRng rng(18);
  for (int i = 0; i < 10000; ++i) {
    const double w = rng.uniform(1, 50);
    const StripeBand band(w, rng.uniform(0, 80), rng.uniform(1e-6, w / 2));
    const LayerKinematics kin(rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-kPi, kPi),
                              rng.uniform(-10, 10), rng.uniform(-10, 10));
    const double o = uniform_occupancy(rng.uniform(0, 500), rng.uniform(0, 500), rng.uniform(0, 60), kin, band);
    ASSERT_GE(o, 0.0);
    ASSERT_LE(o, 1.0);
  }
}

TEST(UniformOccupancy, MovingLayerEqualsTranslatedStillLayer) {
  CounterRng rng(19);
  for (int i = 0; i < 2000; ++i) {
    const StripeBand band(rng.uniform(1, 30), rng.uniform(0, 40), 0.5);
    const LayerKinematics kin(rng.uniform(-100, 100), rng.uniform(-100, 100), rng.uniform(-kPi, kPi),
                              rng.uniform(-10, 10), rng.uniform(-10, 10));
    const double t = std::floor(rng.uniform(0, 40));
    const LayerKinematics still(kin.center_x() + kin.velocity_x() * t, kin.center_y() + kin.velocity_y() * t,
                                kin.theta());
    EXPECT_EQ(still, kin.frozen_at(t));
    const double x = rng.uniform(0, 200);
    const double y = rng.uniform(0, 200);
    EXPECT_NEAR(uniform_occupancy(x, y, t, kin, band), uniform_occupancy(x, y, 0, still, band), 1e-9);
  }
}

TEST(UniformOccupancy, IsPeriodicInV) {
  CounterRng rng(20);
  for (int i = 0; i < 5000; ++i) {
    const double w = rng.uniform(1, 30);
    const StripeBand band(w, rng.uniform(0, 40), rng.uniform(1e-3, w / 2));
    const double v = rng.uniform(-500, 500);
    EXPECT_NEAR(uniform_occupancy_at(v, band), uniform_occupancy_at(v + band.period(), band), 1e-9);
  }
}

TEST(Rounding, MatchesLibm) {
  const double cases[] = {0.0, -0.0, 0.5, -0.5, 1.5, -1.5, 2.5, 0.49999999999999994, -0.49999999999999994,
                          4503599627370495.5, 4503599627370496.0, -4503599627370497.0, 1e300, -1e300,
                          std::numeric_limits<double>::denorm_min(), 254.5, 254.49999999999997};
  for (double x : cases) {
    EXPECT_EQ(round_half_away(x), std::round(x)) << x;
    EXPECT_EQ(floor_exact(x), std::floor(x)) << x;
  }
  CounterRng rng(21);
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.uniform(-1e6, 1e6) * (rng.coin() ? 1.0 : 1e-6);
    ASSERT_EQ(round_half_away(x), std::round(x)) << x;
    ASSERT_EQ(floor_exact(x), std::floor(x)) << x;
    const double b = rng.uniform(-10, 265);
    ASSERT_EQ(to_byte(b), static_cast<std::uint8_t>(std::clamp(std::lround(b), 0L, 255L))) << b;
  }
  EXPECT_EQ(to_byte(std::numeric_limits<double>::quiet_NaN()), 0);
}

}  // namespace
}  // namespace flicker
