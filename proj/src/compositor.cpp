#include "flicker/compositor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "flicker/rng.hpp"
#include "flicker/rounding.hpp"

namespace flicker {

void DegradationSpec::validate() const {
  frame.validate();
  if (!(intensity > 0.0 && intensity <= 1.0)) {
    throw std::invalid_argument("banding intensity must lie in (0, 1]");
  }
  if (frame_count < 1) throw std::invalid_argument("frame count must be >= 1");
  base.validate();
  if (base.role != LayerRole::kBase) throw std::invalid_argument("base layer must have the base role");
  if (thick) {
    thick->validate();
    if (thick->role != LayerRole::kThick) {
      throw std::invalid_argument("thick layer must have the thick role");
    }
    if (!(thick->band.width() > base.band.width())) {
      throw std::invalid_argument("thick layer width must exceed base layer width");
    }
  }
}

OccupancyField fuse(const OccupancyField& base, const OccupancyField& thick) {
  if (!base.values.same_shape(thick.values)) {
    throw std::invalid_argument("fuse: occupancy fields differ in shape");
  }
  if (base.frame != thick.frame) throw std::invalid_argument("fuse: occupancy fields differ in frame");
  OccupancyField out{Grid<double>(base.values.width(), base.values.height()), base.frame};
  auto a = base.values.values();
  auto b = thick.values.values();
  auto o = out.values.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::max(a[i], b[i]);
  return out;
}

std::uint64_t layer_key(std::uint64_t clip_seed, LayerRole role) {
  return derive_key(clip_seed, static_cast<std::uint64_t>(role));
}

namespace {

const DegradationSpec& validated(const DegradationSpec& spec) {
  spec.validate();
  return spec;
}

}  // namespace

DegradationModel::DegradationModel(const DegradationSpec& spec)
    : spec_(validated(spec)), base_(spec.base, layer_key(spec.seed, LayerRole::kBase)) {
  if (spec.thick) thick_.emplace(*spec.thick, layer_key(spec.seed, LayerRole::kThick));
}

OccupancyField DegradationModel::render_layer(LayerRole role, int t) const {
  if (t < 0 || t >= spec_.frame_count) throw std::out_of_range("frame index outside the clip");
  OccupancyField field{Grid<double>(spec_.frame.width, spec_.frame.height), t};
  if (role == LayerRole::kBase) {
    base_.render(t, field.values);
  } else if (thick_) {
    thick_->render(t, field.values);
  }
  return field;
}

RenderedField DegradationModel::render(int t) const {
  RenderedField out;
  out.occupancy = render_layer(LayerRole::kBase, t);
  // Thick layer renders into the amplitude buffer, then fuses in place.
  out.amplitude.values = Grid<double>(spec_.frame.width, spec_.frame.height);
  auto o = out.occupancy.values.values();
  auto a = out.amplitude.values.values();
  if (thick_) {
    thick_->render(t, out.amplitude.values);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::max(o[i], a[i]);
  }
  for (std::size_t i = 0; i < o.size(); ++i) a[i] = spec_.intensity * o[i];
  return out;
}

RenderedField render_field(const DegradationSpec& spec, int t) { return DegradationModel(spec).render(t); }

Image apply_degradation(const Image& clean, const OccupancyField& occupancy, double alpha) {
  if (clean.width() != occupancy.values.width() || clean.height() != occupancy.values.height()) {
    throw std::invalid_argument("apply_degradation: frame and occupancy differ in shape");
  }
  Image out = clean;
  const auto channels = static_cast<std::size_t>(clean.channels());
  auto occ = occupancy.values.values();
  auto dst = out.bytes();
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i] == 0.0) continue;
    for (std::size_t c = 0; c < channels; ++c) {
      std::uint8_t& px = dst[i * channels + c];
      px = to_byte(attenuate(px, occ[i], alpha));
    }
  }
  return out;
}

Image quantize_amplitude(const AmplitudeMap& map) {
  Image out(map.values.width(), map.values.height(), 1);
  auto src = map.values.values();
  auto dst = out.bytes();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = to_byte(src[i] * 255.0);
  }
  return out;
}

AmplitudeMap dequantize_amplitude(const Image& image) {
  if (image.channels() != 1) throw std::invalid_argument("amplitude maps must be single-channel");
  AmplitudeMap map{Grid<double>(image.width(), image.height())};
  auto src = image.bytes();
  auto dst = map.values.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] / 255.0;
  return map;
}

std::string image_hash(const Image& image) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int dim : {image.width(), image.height(), image.channels()}) {
    for (int shift = 0; shift < 32; shift += 8) feed(static_cast<std::uint8_t>(dim >> shift));
  }
  for (std::uint8_t byte : image.bytes()) feed(byte);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ClipFrame render_clip_frame(const DegradationModel& model, const Image& clean, int t) {
  const DegradationSpec& spec = model.spec();
  if (clean.width() != spec.frame.width || clean.height() != spec.frame.height) {
    throw std::invalid_argument("render_clip: frame shape does not match the spec");
  }
  RenderedField field = model.render(t);
  ClipFrame frame;
  frame.degraded = apply_degradation(clean, field.occupancy, spec.intensity);
  frame.occupancy = std::move(field.occupancy);
  frame.amplitude = std::move(field.amplitude);
  return frame;
}

ClipResult render_clip(const DegradationSpec& spec, std::span<const Image> clean_frames) {
  if (static_cast<int>(clean_frames.size()) != spec.frame_count) {
    throw std::invalid_argument("render_clip: expected " + std::to_string(spec.frame_count) +
                                " frames, got " + std::to_string(clean_frames.size()));
  }
  for (const Image& frame : clean_frames) {
    if (frame.width() != spec.frame.width || frame.height() != spec.frame.height) {
      throw std::invalid_argument("render_clip: frame shape does not match the spec");
    }
  }

  const DegradationModel model(spec);
  ClipResult result;
  result.manifest.spec = spec;
  result.degraded.reserve(clean_frames.size());
  result.amplitude.reserve(clean_frames.size());
  for (int t = 0; t < spec.frame_count; ++t) {
    const Image& clean = clean_frames[static_cast<std::size_t>(t)];
    ClipFrame frame = render_clip_frame(model, clean, t);
    result.degraded.push_back(std::move(frame.degraded));
    result.amplitude.push_back(std::move(frame.amplitude));
    result.manifest.input_hashes.push_back(image_hash(clean));
  }
  return result;
}

}  // namespace flicker
