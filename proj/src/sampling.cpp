#include "flicker/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "flicker/errors.hpp"

namespace flicker {
namespace {

void check_range(const Range& r, const std::string& name) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) throw ConfigError(name + ": range must be finite");
  if (r.lo > r.hi) throw ConfigError(name + ": inverted range [" + std::to_string(r.lo) + ", " +
                                     std::to_string(r.hi) + "]");
}

void check_within(const Range& r, const std::string& name, double lo, double hi, bool lo_open) {
  check_range(r, name);
  const bool lo_ok = lo_open ? r.lo > lo : r.lo >= lo;
  if (!lo_ok || r.hi > hi) {
    throw ConfigError(name + ": range must lie within " + (lo_open ? "(" : "[") + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
}

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_layer(const LayerRanges& r, const std::string& role) {
  if (r.kinds.empty()) throw ConfigError(role + ".kinds: no stripe kinds enabled");
  check_within(r.width, role + ".width", 1.0, kInf, false);
  check_within(r.gap, role + ".gap", 0.0, kInf, false);
  check_within(r.feather_ratio, role + ".feather_ratio", 0.0, 0.5, true);
  check_range(r.theta, role + ".theta");
  check_range(r.center_x, role + ".center_x");
  check_range(r.center_y, role + ".center_y");
  check_range(r.velocity_x, role + ".velocity_x");
  check_range(r.velocity_y, role + ".velocity_y");
  check_within(r.curve_amplitude, role + ".curve_amplitude", 0.0, kInf, false);
  check_within(r.crack_keep_ratio, role + ".crack_keep_ratio", 0.0, 1.0, true);
  if (r.crack_count.lo < 0 || r.crack_count.lo > r.crack_count.hi) {
    throw ConfigError(role + ".crack_count: range must be nonnegative and ordered");
  }
  check_within(r.crack_width, role + ".crack_width", 0.0, kInf, true);
  check_within(r.crack_jitter, role + ".crack_jitter", 0.0, kInf, false);
  check_within(r.crack_sigma, role + ".crack_sigma", 0.0, kInf, true);
  check_within(r.diamond_length, role + ".diamond_length", 0.0, kInf, true);
  check_within(r.diamond_size_ratio, role + ".diamond_size_ratio", 0.0, 1.0, true);
  if (r.diamond_size_ratio.hi >= 1.0) throw ConfigError(role + ".diamond_size_ratio: must stay below 1");
  check_within(r.width_jitter, role + ".width_jitter", 0.0, kInf, false);
  check_within(r.spacing_jitter, role + ".spacing_jitter", 0.0, kInf, false);
  check_within(r.edge_jitter, role + ".edge_jitter", 0.0, kInf, false);
  check_within(r.wiggle_amplitude, role + ".wiggle_amplitude", 0.0, kInf, false);
  check_within(r.wiggle_sigma, role + ".wiggle_sigma", 0.0, kInf, true);
  check_within(r.edge_sigma, role + ".edge_sigma", 0.0, kInf, true);
  check_within(r.blur_weight, role + ".blur_weight", 0.0, kInf, false);
  check_within(r.blur_sigma, role + ".blur_sigma", 0.0, kInf, true);
  check_within(r.blur_cell, role + ".blur_cell", 0.0, kInf, true);
}

LayerRanges shared_defaults() {
  LayerRanges r;
  r.kinds = {StripeKind::kUniform, StripeKind::kCurve, StripeKind::kCracked, StripeKind::kDiamond,
             StripeKind::kComplex};
  r.feather_ratio = {0.1, 0.4};
  r.theta = {-0.6, 0.6};
  r.center_x = {0.0, 1.0};
  r.center_y = {0.0, 1.0};
  r.velocity_x = {-4.0, 4.0};
  r.velocity_y = {-4.0, 4.0};
  r.crack_keep_ratio = {0.3, 0.8};
  r.crack_count = {1, 3};
  r.crack_jitter = {0.1, 0.5};
  r.crack_sigma = {4.0, 16.0};
  r.diamond_size_ratio = {0.3, 0.8};
  r.wiggle_sigma = {16.0, 40.0};
  r.edge_sigma = {1.0, 3.0};
  r.blur_sigma = {2.0, 4.0};
  r.blur_cell = {4.0, 4.0};
  return r;
}

double max_corner_distance(const FieldFrameContext& frame, double cx, double cy) {
  double best = 0.0;
  for (double x : {0.0, static_cast<double>(frame.width - 1)}) {
    for (double y : {0.0, static_cast<double>(frame.height - 1)}) {
      best = std::max(best, std::hypot(x - cx, y - cy));
    }
  }
  return best;
}

StripeLayerSpec sample_layer(const LayerRanges& r, LayerRole role, double width,
                             const FieldFrameContext& frame, int frame_count, CounterRng& rng) {
  StripeLayerSpec spec;
  spec.role = role;
  const StripeKind kind =
      r.kinds[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(r.kinds.size()) - 1))];
  const double gap = r.gap.sample(rng);
  const double feather = r.feather_ratio.sample(rng) * width;
  spec.band = StripeBand(width, gap, feather);

  const double theta = r.theta.sample(rng);
  const double cx = r.center_x.sample(rng) * frame.width;
  const double cy = r.center_y.sample(rng) * frame.height;
  const double vx = r.velocity_x.sample(rng);
  const double vy = r.velocity_y.sample(rng);
  spec.kinematics = LayerKinematics(cx, cy, theta, vx, vy);
  spec.domain_extent = required_domain_extent(frame, spec.kinematics, spec.band, frame_count);

  switch (kind) {
    case StripeKind::kUniform:
      spec.params = UniformParams{};
      break;
    case StripeKind::kCurve: {
      CurveParams p;
      p.amplitude = r.curve_amplitude.sample(rng);
      p.sign = rng.coin() ? 1 : -1;
      // Mean of s * A * q^2 for q uniform on [-1, 1].
      p.centering = p.sign * p.amplitude / 3.0;
      const double mid_x = (frame.width - 1) / 2.0;
      const double mid_y = (frame.height - 1) / 2.0;
      p.u_mid = parallel_coord(mid_x, mid_y, 0.0, spec.kinematics);
      double span = 0.0;
      for (double x : {0.0, static_cast<double>(frame.width - 1)}) {
        for (double y : {0.0, static_cast<double>(frame.height - 1)}) {
          span = std::max(span, std::abs(parallel_coord(x, y, 0.0, spec.kinematics) - p.u_mid));
        }
      }
      p.u_span = std::max(span, 1.0);
      spec.params = p;
      break;
    }
    case StripeKind::kCracked: {
      CrackedParams p;
      p.keep_ratio = r.crack_keep_ratio.sample(rng);
      p.crack_count = static_cast<int>(rng.uniform_int(r.crack_count.lo, r.crack_count.hi));
      p.crack_base_width = r.crack_width.sample(rng);
      p.jitter_ratio = r.crack_jitter.sample(rng);
      p.noise_sigma = r.crack_sigma.sample(rng);
      spec.params = p;
      break;
    }
    case StripeKind::kDiamond: {
      DiamondParams p;
      p.length = r.diamond_length.sample(rng);
      p.size_ratio = r.diamond_size_ratio.sample(rng);
      spec.params = p;
      break;
    }
    case StripeKind::kComplex: {
      ComplexParams p;
      p.width_jitter = r.width_jitter.sample(rng);
      p.spacing_jitter = r.spacing_jitter.sample(rng);
      p.edge_jitter = r.edge_jitter.sample(rng);
      p.wiggle_amplitude = r.wiggle_amplitude.sample(rng);
      p.wiggle_sigma = r.wiggle_sigma.sample(rng);
      p.edge_sigma = r.edge_sigma.sample(rng);
      p.blur_weight = r.blur_weight.sample(rng);
      p.blur_sigma = r.blur_sigma.sample(rng);
      p.blur_cell = r.blur_cell.sample(rng);
      spec.params = p;
      break;
    }
  }
  return spec;
}

}  // namespace

LayerRanges default_base_ranges() {
  LayerRanges r = shared_defaults();
  r.width = {4.0, 14.0};
  r.gap = {6.0, 20.0};
  r.curve_amplitude = {2.0, 10.0};
  r.crack_width = {1.0, 2.0};
  r.diamond_length = {16.0, 48.0};
  r.width_jitter = {0.0, 2.0};
  r.spacing_jitter = {0.0, 1.5};
  r.edge_jitter = {0.0, 1.0};
  r.wiggle_amplitude = {0.0, 1.5};
  r.blur_weight = {0.0, 1.0};
  return r;
}

LayerRanges default_thick_ranges() {
  LayerRanges r = shared_defaults();
  r.width = {30.0, 90.0};
  r.gap = {80.0, 260.0};
  r.curve_amplitude = {10.0, 40.0};
  r.crack_width = {2.0, 6.0};
  r.diamond_length = {60.0, 160.0};
  r.width_jitter = {0.0, 10.0};
  r.spacing_jitter = {0.0, 8.0};
  r.edge_jitter = {0.0, 4.0};
  r.wiggle_amplitude = {0.0, 6.0};
  r.blur_weight = {0.0, 4.0};
  return r;
}

SamplingConfig default_sampling_config() {
  SamplingConfig c;
  c.base = default_base_ranges();
  c.thick = default_thick_ranges();
  return c;
}

void SamplingConfig::validate() const {
  check_layer(base, "base");
  check_layer(thick, "thick");
  check_within(intensity, "intensity", 0.0, 1.0, true);
  if (with_thick && !(thick.width.hi > base.width.lo)) {
    throw ConfigError("thick.width: range must extend above the base width range (thick stripes are wider)");
  }
}

double required_domain_extent(const FieldFrameContext& frame, const LayerKinematics& kin,
                              const StripeBand& band, int frame_count) {
  const double reach = max_corner_distance(frame, kin.center_x(), kin.center_y());
  const double travel = std::hypot(kin.velocity_x(), kin.velocity_y()) * std::max(0, frame_count - 1);
  return 2.0 * (reach + travel + band.period()) + 4.0;
}

DegradationSpec sample_spec(const SamplingConfig& config, const FieldFrameContext& frame,
                            int frame_count, std::uint64_t seed) {
  config.validate();
  frame.validate();
  if (frame_count < 1) throw ConfigError("frame count must be >= 1");

  CounterRng rng(derive_key(seed, static_cast<std::uint64_t>(FieldTag::kSampler)));
  DegradationSpec spec;
  spec.frame = frame;
  spec.seed = seed;
  spec.frame_count = frame_count;

  Range base_width = config.base.width;
  if (config.with_thick) base_width.hi = std::min(base_width.hi, config.thick.width.hi);
  const double w_base = base_width.sample(rng);

  double w_thick = 0.0;
  if (config.with_thick) {
    const Range thick_width{std::max(config.thick.width.lo, w_base), config.thick.width.hi};
    w_thick = thick_width.sample(rng);
    if (w_thick <= w_base) w_thick = 0.5 * (w_base + config.thick.width.hi);
  }

  spec.base = sample_layer(config.base, LayerRole::kBase, w_base, frame, frame_count, rng);
  if (config.with_thick) {
    spec.thick = sample_layer(config.thick, LayerRole::kThick, w_thick, frame, frame_count, rng);
  }
  spec.intensity = config.intensity.sample(rng);
  spec.validate();
  return spec;
}

}  // namespace flicker
