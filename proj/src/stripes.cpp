#include "flicker/stripes.hpp"

#include <cmath>
#include <stdexcept>

#include "flicker/rng.hpp"

namespace flicker {
namespace {

std::uint64_t stripe_tag(std::int64_t k) { return static_cast<std::uint64_t>(k); }

NoiseLine make_line(double extent, double sigma, std::uint64_t seed) {
  const int length = std::max(2, static_cast<int>(std::ceil(extent)) + 1);
  return NoiseLine(-extent / 2.0, smoothed_noise_1d(length, sigma, seed));
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void CurveParams::validate() const {
  require(std::isfinite(amplitude) && amplitude >= 0.0, "curve amplitude must be >= 0");
  require(sign == 1 || sign == -1, "curve sign must be +1 or -1");
  require(std::isfinite(centering) && std::isfinite(u_mid), "curve offsets must be finite");
  require(std::isfinite(u_span) && u_span > 0.0, "curve u_span must be > 0");
}

double CurveParams::deformation(double u) const {
  const double s = (u - u_mid) / u_span;
  return sign * amplitude * s * s - centering;
}

void CrackedParams::validate() const {
  require(keep_ratio > 0.0 && keep_ratio <= 1.0, "crack keep ratio must lie in (0, 1]");
  require(crack_count >= 0, "crack count must be >= 0");
  require(std::isfinite(crack_base_width) && crack_base_width > 0.0, "crack base width must be > 0");
  require(std::isfinite(jitter_ratio) && jitter_ratio >= 0.0, "crack jitter ratio must be >= 0");
  require(std::isfinite(noise_sigma) && noise_sigma > 0.0, "crack noise sigma must be > 0");
}

void DiamondParams::validate() const {
  require(std::isfinite(length) && length > 0.0, "diamond length must be > 0");
  require(size_ratio > 0.0 && size_ratio < 1.0, "diamond size ratio must lie in (0, 1)");
}

void ComplexParams::validate() const {
  require(std::isfinite(width_jitter) && width_jitter >= 0.0, "width jitter must be >= 0");
  require(std::isfinite(spacing_jitter) && spacing_jitter >= 0.0, "spacing jitter must be >= 0");
  require(std::isfinite(edge_jitter) && edge_jitter >= 0.0, "edge jitter must be >= 0");
  require(std::isfinite(wiggle_amplitude) && wiggle_amplitude >= 0.0, "wiggle amplitude must be >= 0");
  require(std::isfinite(wiggle_sigma) && wiggle_sigma > 0.0, "wiggle sigma must be > 0");
  require(std::isfinite(edge_sigma) && edge_sigma > 0.0, "edge sigma must be > 0");
  require(std::isfinite(blur_weight) && blur_weight >= 0.0, "blur weight must be >= 0");
  require(std::isfinite(blur_sigma) && blur_sigma > 0.0, "blur sigma must be > 0");
  require(std::isfinite(blur_cell) && blur_cell > 0.0, "blur cell must be > 0");
}

std::pair<std::int64_t, std::int64_t> stripe_range(double extent, const StripeBand& band) {
  const double half = extent / 2.0 / band.period();
  return {static_cast<std::int64_t>(std::floor(-half)) - 1, static_cast<std::int64_t>(std::ceil(half)) + 1};
}

CrackedField CrackedField::bake(const CrackedParams& params, const StripeBand& band, double extent,
                                std::uint64_t key) {
  params.validate();
  CrackedField field;
  field.params = params;
  const auto [k_lo, k_hi] = stripe_range(extent, band);
  field.stripes.k_min = k_lo;
  field.stripes.entries.resize(static_cast<std::size_t>(k_hi - k_lo + 1));

  const double half_width = band.width() / 2.0;
  const double margin = half_width - params.keep_half_width(band);
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    CrackedStripe& stripe = field.stripes.entries[static_cast<std::size_t>(k - k_lo)];
    CounterRng layout(derive_key(key, {stripe_tag(k), static_cast<std::uint64_t>(FieldTag::kCrackLayout)}));
    stripe.cracks.resize(static_cast<std::size_t>(params.crack_count));
    for (int i = 0; i < params.crack_count; ++i) {
      Crack& crack = stripe.cracks[static_cast<std::size_t>(i)];
      // (v_keep, W/2]
      crack.offset = half_width - layout.uniform() * margin;
      crack.side = layout.coin() ? 1 : -1;
      if (params.jitter_ratio > 0.0) {
        crack.width_noise = make_line(
            extent, params.noise_sigma,
            derive_key(key, {stripe_tag(k), static_cast<std::uint64_t>(FieldTag::kCrackWidth),
                             static_cast<std::uint64_t>(i)}));
      }
    }
  }
  return field;
}

ComplexField ComplexField::bake(const ComplexParams& params, const StripeBand& band, double extent,
                                std::uint64_t key) {
  params.validate();
  ComplexField field;
  field.params = params;
  const auto [k_lo, k_hi] = stripe_range(extent, band);
  field.stripes.k_min = k_lo;
  field.stripes.entries.resize(static_cast<std::size_t>(k_hi - k_lo + 1));

  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    ComplexStripe& stripe = field.stripes.entries[static_cast<std::size_t>(k - k_lo)];
    CounterRng jitter(derive_key(key, {stripe_tag(k), static_cast<std::uint64_t>(FieldTag::kStripeJitter)}));
    stripe.width_jitter = jitter.uniform(-params.width_jitter, params.width_jitter);
    stripe.spacing_jitter = jitter.uniform(-params.spacing_jitter, params.spacing_jitter);
    stripe.gamma_top = jitter.uniform(0.6, 1.0);
    stripe.gamma_bottom = jitter.uniform(0.6, 1.0);
    if (params.wiggle_amplitude > 0.0) {
      stripe.wiggle = make_line(extent, params.wiggle_sigma,
                                derive_key(key, {stripe_tag(k), static_cast<std::uint64_t>(FieldTag::kWiggle)}));
    }
    if (params.edge_jitter > 0.0) {
      stripe.edge_top = make_line(extent, params.edge_sigma,
                                  derive_key(key, {stripe_tag(k), static_cast<std::uint64_t>(FieldTag::kEdgeTop)}));
      stripe.edge_bottom = make_line(
          extent, params.edge_sigma, derive_key(key, {stripe_tag(k), static_cast<std::uint64_t>(FieldTag::kEdgeBottom)}));
    }
  }

  if (params.blur_weight > 0.0) {
    const int cells = std::max(2, static_cast<int>(std::ceil(extent / params.blur_cell)) + 1);
    field.blur = NoiseSheet(-extent / 2.0, -extent / 2.0, params.blur_cell,
                            smoothed_noise_2d(cells, cells, params.blur_sigma,
                                              derive_key(key, static_cast<std::uint64_t>(FieldTag::kBlur))));
  }
  return field;
}

double curve_occupancy_at(double u, double v, const StripeBand& band, const CurveParams& p) {
  // The stripe is chosen on the deformed axis so large amplitudes bend whole
  // stripes instead of cutting them at the round() boundary.
  return uniform_occupancy_at(v - p.deformation(u), band);
}

double cracked_main_mask(double v, const StripeBand& band, const CrackedParams& p) {
  const StripeIndex idx = stripe_index(v, band);
  return std::abs(v - idx.center) <= p.keep_half_width(band) ? 1.0 : 0.0;
}

namespace {

double crack_union(double u, double v, const StripeIndex& idx, const CrackedField& field) {
  const CrackedParams& p = field.params;
  for (const Crack& crack : field.stripes.at(idx.k).cracks) {
    const double width = p.crack_base_width * (1.0 + p.jitter_ratio * crack.width_noise.at(u));
    if (std::abs(v - (idx.center + crack.side * crack.offset)) <= 0.5 * width) return 1.0;
  }
  return 0.0;
}

}  // namespace

double cracked_sub_mask(double u, double v, const StripeBand& band, const CrackedField& field) {
  return crack_union(u, v, stripe_index(v, band), field);
}

double cracked_occupancy_at(double u, double v, const StripeBand& band, const CrackedField& field) {
  const StripeIndex idx = stripe_index(v, band);
  const double backbone =
      feathered(std::abs(v - idx.center) - field.params.keep_half_width(band), band.feather());
  if (backbone >= 1.0 || field.params.crack_count == 0) return backbone;
  return std::max(backbone, crack_union(u, v, idx, field));
}

double diamond_shear_mask(double u, double v, const StripeBand& band, const DiamondParams& p) {
  const StripeIndex idx = stripe_index(v, band);
  double u_mod = u - p.length * floor_exact(u / p.length);
  if (u_mod >= p.length) u_mod = 0.0;
  const double slope = p.tan_alpha(band) * (u_mod - p.length / 2.0);
  const double half = 0.5 * band.width() * p.size_ratio;
  const double top = idx.center + half - slope;
  const double bottom = idx.center - half - slope;
  return (bottom <= v && v <= top) ? 1.0 : 0.0;
}

double diamond_occupancy_at(double u, double v, const StripeBand& band, const DiamondParams& p) {
  if (diamond_shear_mask(u, v, band, p) == 0.0) return 0.0;
  return uniform_occupancy_at(v, band);
}

double complex_base_distance(double u, double v, const StripeBand& band, const ComplexField& field) {
  const StripeIndex idx = stripe_index(v, band);
  const ComplexStripe& s = field.stripes.at(idx.k);
  const ComplexParams& p = field.params;
  const double width =
      std::max(1.0, band.width() + s.width_jitter + p.wiggle_amplitude * s.wiggle.at(u));
  const double center = idx.center + s.spacing_jitter;
  const double top = center + 0.5 * width + p.edge_jitter * s.gamma_top * s.edge_top.at(u);
  const double bottom = center - 0.5 * width + p.edge_jitter * s.gamma_bottom * s.edge_bottom.at(u);
  return -std::min(top - v, v - bottom);
}

double complex_occupancy_at(double u, double v, const StripeBand& band, const ComplexField& field) {
  double d = complex_base_distance(u, v, band, field);
  if (field.params.blur_weight > 0.0) d -= field.params.blur_weight * field.blur.at(u, v);
  return feathered(d, band.feather());
}

double curve_occupancy(double x, double y, double t, const LayerKinematics& kin,
                       const StripeBand& band, const CurveParams& p) {
  return curve_occupancy_at(parallel_coord(x, y, t, kin), orthogonal_coord(x, y, t, kin), band, p);
}

double cracked_occupancy(double x, double y, double t, const LayerKinematics& kin,
                         const StripeBand& band, const CrackedField& field) {
  return cracked_occupancy_at(parallel_coord(x, y, t, kin), orthogonal_coord(x, y, t, kin), band,
                              field);
}

double diamond_occupancy(double x, double y, double t, const LayerKinematics& kin,
                         const StripeBand& band, const DiamondParams& p) {
  return diamond_occupancy_at(parallel_coord(x, y, t, kin), orthogonal_coord(x, y, t, kin), band, p);
}

double complex_occupancy(double x, double y, double t, const LayerKinematics& kin,
                         const StripeBand& band, const ComplexField& field) {
  return complex_occupancy_at(parallel_coord(x, y, t, kin), orthogonal_coord(x, y, t, kin), band,
                              field);
}

}  // namespace flicker
