// Random degradation specs drawn from configured parameter ranges.

#pragma once

#include <cstdint>
#include <vector>

#include "flicker/compositor.hpp"
#include "flicker/rng.hpp"

namespace flicker {

// Closed interval; lo == hi pins the value.
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  double sample(CounterRng& rng) const { return lo == hi ? lo : rng.uniform(lo, hi); }
  bool operator==(const Range&) const = default;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
  bool operator==(const IntRange&) const = default;
};

struct LayerRanges {
  std::vector<StripeKind> kinds;
  Range width;
  Range gap;
  Range feather_ratio;  // feather = ratio * width, ratio in (0, 0.5]
  Range theta;          // radians
  Range center_x;       // fraction of frame width
  Range center_y;       // fraction of frame height
  Range velocity_x;     // pixels per frame
  Range velocity_y;

  Range curve_amplitude;

  Range crack_keep_ratio;
  IntRange crack_count;
  Range crack_width;
  Range crack_jitter;
  Range crack_sigma;

  Range diamond_length;
  Range diamond_size_ratio;

  Range width_jitter;
  Range spacing_jitter;
  Range edge_jitter;
  Range wiggle_amplitude;
  Range wiggle_sigma;
  Range edge_sigma;
  Range blur_weight;
  Range blur_sigma;
  Range blur_cell;

  bool operator==(const LayerRanges&) const = default;
};

struct SamplingConfig {
  LayerRanges base;
  LayerRanges thick;
  Range intensity{0.35, 0.9};
  bool with_thick = true;

  // Throws ConfigError on empty or inverted ranges, and when the thick width
  // range cannot exceed the base width range.
  void validate() const;
  bool operator==(const SamplingConfig&) const = default;
};

LayerRanges default_base_ranges();
LayerRanges default_thick_ranges();
SamplingConfig default_sampling_config();

// Side of the (u, v) window a layer must cover for every frame of the clip.
double required_domain_extent(const FieldFrameContext& frame, const LayerKinematics& kin,
                              const StripeBand& band, int frame_count);

// Draws every field of a spec from `config`. The same (config, frame,
// frame_count, seed) always yields the same spec; `seed` also becomes the
// clip seed of the result.
DegradationSpec sample_spec(const SamplingConfig& config, const FieldFrameContext& frame,
                            int frame_count, std::uint64_t seed);

}  // namespace flicker
