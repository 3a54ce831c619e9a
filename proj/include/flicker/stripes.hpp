// Non-uniform stripe geometries: curve, cracked, diamond and complex.
//
// Stochastic parts (crack layouts, width and edge noise, blur field) are
// baked once per layer into immutable tables keyed by stripe index, so
// evaluation is a pure function of (x, y, t).

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "flicker/field.hpp"
#include "flicker/noise.hpp"

namespace flicker {

struct CurveParams {
  double amplitude = 0.0;  // A, pixels
  int sign = 1;            // +1 or -1
  double centering = 0.0;  // mu_C, pixels
  double u_mid = 0.0;
  double u_span = 1.0;

  void validate() const;
  // sign * A * ((u - u_mid) / u_span)^2 - mu_C
  double deformation(double u) const;
  bool operator==(const CurveParams&) const = default;
};

struct CrackedParams {
  double keep_ratio = 1.0;        // R_keep in (0, 1]
  int crack_count = 0;            // n
  double crack_base_width = 1.0;  // omega_base, pixels
  double jitter_ratio = 0.0;      // rho
  double noise_sigma = 8.0;       // samples

  void validate() const;
  double keep_half_width(const StripeBand& band) const { return keep_ratio * band.width() / 2.0; }
  bool operator==(const CrackedParams&) const = default;
};

struct DiamondParams {
  double length = 20.0;     // L, pixels
  double size_ratio = 0.5;  // R_w in (0, 1)

  void validate() const;
  double tan_alpha(const StripeBand& band) const { return band.width() * (1.0 - size_ratio) / length; }
  bool operator==(const DiamondParams&) const = default;
};

struct ComplexParams {
  double width_jitter = 0.0;      // j_w, pixels
  double spacing_jitter = 0.0;    // j_s, pixels
  double edge_jitter = 0.0;       // eta, pixels
  double wiggle_amplitude = 0.0;  // pixels per unit of wiggle noise
  double wiggle_sigma = 24.0;     // samples
  double edge_sigma = 2.0;        // samples
  double blur_weight = 0.0;       // epsilon
  double blur_sigma = 3.0;        // lattice cells
  double blur_cell = 4.0;         // lattice spacing, pixels

  void validate() const;
  bool operator==(const ComplexParams&) const = default;
};

// Per-stripe records for k in [k_min, k_min + size). Lookups outside the
// baked range reuse the nearest record.
template <typename T>
struct StripeTable {
  std::int64_t k_min = 0;
  std::vector<T> entries;

  const T& at(std::int64_t k) const {
    const auto last = static_cast<std::int64_t>(entries.size()) - 1;
    return entries[static_cast<std::size_t>(std::clamp<std::int64_t>(k - k_min, 0, last))];
  }
};

// Stripe index range covering v in [-extent/2, extent/2].
std::pair<std::int64_t, std::int64_t> stripe_range(double extent, const StripeBand& band);

struct Crack {
  double offset = 0.0;  // O_i, distance from the stripe center
  int side = 1;         // +1 or -1
  NoiseLine width_noise;
};

struct CrackedStripe {
  std::vector<Crack> cracks;
};

struct CrackedField {
  CrackedParams params;
  StripeTable<CrackedStripe> stripes;

  // Noise lines span u in [-extent/2, extent/2].
  static CrackedField bake(const CrackedParams& params, const StripeBand& band, double extent,
                           std::uint64_t key);
};

struct ComplexStripe {
  double width_jitter = 0.0;    // delta_w,k
  double spacing_jitter = 0.0;  // delta_s,k
  double gamma_top = 1.0;
  double gamma_bottom = 1.0;
  NoiseLine wiggle;
  NoiseLine edge_top;
  NoiseLine edge_bottom;
};

struct ComplexField {
  ComplexParams params;
  StripeTable<ComplexStripe> stripes;
  NoiseSheet blur;

  static ComplexField bake(const ComplexParams& params, const StripeBand& band, double extent,
                           std::uint64_t key);
};

// Evaluation in stripe coordinates.
double curve_occupancy_at(double u, double v, const StripeBand& band, const CurveParams& p);
double cracked_occupancy_at(double u, double v, const StripeBand& band, const CrackedField& field);
double diamond_occupancy_at(double u, double v, const StripeBand& band, const DiamondParams& p);
double complex_occupancy_at(double u, double v, const StripeBand& band, const ComplexField& field);

// Hard backbone and crack indicators of the cracked geometry, before
// feathering; exposed for union-dominance checks.
double cracked_main_mask(double v, const StripeBand& band, const CrackedParams& p);
double cracked_sub_mask(double u, double v, const StripeBand& band, const CrackedField& field);

double diamond_shear_mask(double u, double v, const StripeBand& band, const DiamondParams& p);

// Signed distance fed to the smoothstep, before the blur term.
double complex_base_distance(double u, double v, const StripeBand& band, const ComplexField& field);

double curve_occupancy(double x, double y, double t, const LayerKinematics& kin,
                       const StripeBand& band, const CurveParams& p);
double cracked_occupancy(double x, double y, double t, const LayerKinematics& kin,
                         const StripeBand& band, const CrackedField& field);
double diamond_occupancy(double x, double y, double t, const LayerKinematics& kin,
                         const StripeBand& band, const DiamondParams& p);
double complex_occupancy(double x, double y, double t, const LayerKinematics& kin,
                         const StripeBand& band, const ComplexField& field);

}  // namespace flicker
