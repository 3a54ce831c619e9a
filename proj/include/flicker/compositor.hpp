// Dual-layer fusion, pixel transfer and whole-clip rendering.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flicker/grid.hpp"
#include "flicker/image.hpp"
#include "flicker/layer.hpp"

namespace flicker {

inline constexpr const char* kToolVersion = "flickerband 1.0.0";

struct OccupancyField {
  Grid<double> values;
  int frame = 0;
};

// Ground-truth luminance-fluctuation amplitude, one value in [0, 1] per pixel.
struct AmplitudeMap {
  Grid<double> values;
};

struct DegradationSpec {
  FieldFrameContext frame;
  StripeLayerSpec base;
  std::optional<StripeLayerSpec> thick;
  double intensity = 0.6;  // alpha in (0, 1]
  std::uint64_t seed = 0;
  int frame_count = 1;

  // Throws std::invalid_argument on any violated invariant, including a thick
  // layer that is not wider than the base layer.
  void validate() const;
  bool operator==(const DegradationSpec&) const = default;
};

// Pointwise max. Throws std::invalid_argument on shape or frame mismatch.
OccupancyField fuse(const OccupancyField& base, const OccupancyField& thick);

struct RenderedField {
  OccupancyField occupancy;
  AmplitudeMap amplitude;
};

// Both layers of a spec with their noise baked; reusable across frames.
class DegradationModel {
 public:
  explicit DegradationModel(const DegradationSpec& spec);

  // Throws std::out_of_range unless 0 <= t < frame_count.
  RenderedField render(int t) const;
  OccupancyField render_layer(LayerRole role, int t) const;

  const DegradationSpec& spec() const { return spec_; }
  const StripeLayer& base() const { return base_; }
  const std::optional<StripeLayer>& thick() const { return thick_; }

 private:
  DegradationSpec spec_;
  StripeLayer base_;
  std::optional<StripeLayer> thick_;
};

std::uint64_t layer_key(std::uint64_t clip_seed, LayerRole role);

RenderedField render_field(const DegradationSpec& spec, int t);

// c * (1 - alpha * occupancy), on 8-bit code values.
inline double attenuate(double value, double occupancy, double alpha) {
  return value * (1.0 - alpha * occupancy);
}

// Darkens every channel by the fused occupancy. Throws std::invalid_argument
// on shape mismatch.
Image apply_degradation(const Image& clean, const OccupancyField& occupancy, double alpha);

// round(A * 255) per pixel, single channel.
Image quantize_amplitude(const AmplitudeMap& map);
AmplitudeMap dequantize_amplitude(const Image& image);

// 64-bit FNV-1a over shape and pixel bytes, as 16 hex digits.
std::string image_hash(const Image& image);

struct ClipManifest {
  DegradationSpec spec;
  std::string tool_version = kToolVersion;
  std::vector<std::string> input_names;
  std::vector<std::string> input_hashes;

  bool operator==(const ClipManifest&) const = default;
};

struct ClipFrame {
  Image degraded;
  OccupancyField occupancy;
  AmplitudeMap amplitude;
};

// One frame of a clip: render the field at t and darken `clean` with it.
ClipFrame render_clip_frame(const DegradationModel& model, const Image& clean, int t);

struct ClipResult {
  std::vector<Image> degraded;
  std::vector<AmplitudeMap> amplitude;
  ClipManifest manifest;
};

// Throws std::invalid_argument if the frame count or frame shape does not
// match the spec.
ClipResult render_clip(const DegradationSpec& spec, std::span<const Image> clean_frames);

}  // namespace flicker
