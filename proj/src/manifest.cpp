#include "flicker/manifest.hpp"

#include <stdexcept>

#include "flicker/errors.hpp"

namespace flicker {
namespace {

Json range_to_json(const Range& r) { return Json::array({r.lo, r.hi}); }

// Accepts [lo, hi] or a single number.
Range range_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), j.get<double>()};
  if (!j.is_array() || j.size() != 2) throw ConfigError("range must be a number or a [lo, hi] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

IntRange int_range_from_json(const Json& j) {
  if (j.is_number_integer()) return {j.get<int>(), j.get<int>()};
  if (!j.is_array() || j.size() != 2) throw ConfigError("integer range must be a number or a [lo, hi] pair");
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

Json params_to_json(const KindParams& params) {
  return std::visit(
      [](const auto& p) -> Json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, UniformParams>) {
          return Json::object();
        } else if constexpr (std::is_same_v<P, CurveParams>) {
          return {{"amplitude", p.amplitude}, {"sign", p.sign},     {"centering", p.centering},
                  {"u_mid", p.u_mid},         {"u_span", p.u_span}};
        } else if constexpr (std::is_same_v<P, CrackedParams>) {
          return {{"keep_ratio", p.keep_ratio},
                  {"crack_count", p.crack_count},
                  {"crack_base_width", p.crack_base_width},
                  {"jitter_ratio", p.jitter_ratio},
                  {"noise_sigma", p.noise_sigma}};
        } else if constexpr (std::is_same_v<P, DiamondParams>) {
          return {{"length", p.length}, {"size_ratio", p.size_ratio}};
        } else {
          return {{"width_jitter", p.width_jitter},   {"spacing_jitter", p.spacing_jitter},
                  {"edge_jitter", p.edge_jitter},     {"wiggle_amplitude", p.wiggle_amplitude},
                  {"wiggle_sigma", p.wiggle_sigma},   {"edge_sigma", p.edge_sigma},
                  {"blur_weight", p.blur_weight},     {"blur_sigma", p.blur_sigma},
                  {"blur_cell", p.blur_cell}};
        }
      },
      params);
}

KindParams params_from_json(StripeKind kind, const Json& j) {
  switch (kind) {
    case StripeKind::kUniform:
      return UniformParams{};
    case StripeKind::kCurve:
      return CurveParams{j.at("amplitude").get<double>(), j.at("sign").get<int>(),
                         j.at("centering").get<double>(), j.at("u_mid").get<double>(),
                         j.at("u_span").get<double>()};
    case StripeKind::kCracked:
      return CrackedParams{j.at("keep_ratio").get<double>(), j.at("crack_count").get<int>(),
                           j.at("crack_base_width").get<double>(), j.at("jitter_ratio").get<double>(),
                           j.at("noise_sigma").get<double>()};
    case StripeKind::kDiamond:
      return DiamondParams{j.at("length").get<double>(), j.at("size_ratio").get<double>()};
    case StripeKind::kComplex:
      return ComplexParams{j.at("width_jitter").get<double>(),   j.at("spacing_jitter").get<double>(),
                           j.at("edge_jitter").get<double>(),    j.at("wiggle_amplitude").get<double>(),
                           j.at("wiggle_sigma").get<double>(),   j.at("edge_sigma").get<double>(),
                           j.at("blur_weight").get<double>(),    j.at("blur_sigma").get<double>(),
                           j.at("blur_cell").get<double>()};
  }
  throw std::logic_error("unhandled stripe kind");
}

LayerRole parse_role(const std::string& name) {
  if (name == "base") return LayerRole::kBase;
  if (name == "thick") return LayerRole::kThick;
  throw ConfigError("unknown layer role '" + name + "'");
}

Json layer_ranges_to_json(const LayerRanges& r) {
  Json kinds = Json::array();
  for (StripeKind k : r.kinds) kinds.push_back(std::string(kind_name(k)));
  return {{"kinds", kinds},
          {"width", range_to_json(r.width)},
          {"gap", range_to_json(r.gap)},
          {"feather_ratio", range_to_json(r.feather_ratio)},
          {"theta", range_to_json(r.theta)},
          {"center_x", range_to_json(r.center_x)},
          {"center_y", range_to_json(r.center_y)},
          {"velocity_x", range_to_json(r.velocity_x)},
          {"velocity_y", range_to_json(r.velocity_y)},
          {"curve_amplitude", range_to_json(r.curve_amplitude)},
          {"crack_keep_ratio", range_to_json(r.crack_keep_ratio)},
          {"crack_count", Json::array({r.crack_count.lo, r.crack_count.hi})},
          {"crack_width", range_to_json(r.crack_width)},
          {"crack_jitter", range_to_json(r.crack_jitter)},
          {"crack_sigma", range_to_json(r.crack_sigma)},
          {"diamond_length", range_to_json(r.diamond_length)},
          {"diamond_size_ratio", range_to_json(r.diamond_size_ratio)},
          {"width_jitter", range_to_json(r.width_jitter)},
          {"spacing_jitter", range_to_json(r.spacing_jitter)},
          {"edge_jitter", range_to_json(r.edge_jitter)},
          {"wiggle_amplitude", range_to_json(r.wiggle_amplitude)},
          {"wiggle_sigma", range_to_json(r.wiggle_sigma)},
          {"edge_sigma", range_to_json(r.edge_sigma)},
          {"blur_weight", range_to_json(r.blur_weight)},
          {"blur_sigma", range_to_json(r.blur_sigma)},
          {"blur_cell", range_to_json(r.blur_cell)}};
}

LayerRanges layer_ranges_from_json(const Json& j, LayerRanges r) {
  if (!j.is_object()) throw ConfigError("layer ranges must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "kinds") {
      r.kinds.clear();
      for (const auto& name : value) r.kinds.push_back(parse_kind(name.get<std::string>()));
    } else if (key == "crack_count") {
      r.crack_count = int_range_from_json(value);
    } else {
      Range* slot = nullptr;
      if (key == "width") slot = &r.width;
      else if (key == "gap") slot = &r.gap;
      else if (key == "feather_ratio") slot = &r.feather_ratio;
      else if (key == "theta") slot = &r.theta;
      else if (key == "center_x") slot = &r.center_x;
      else if (key == "center_y") slot = &r.center_y;
      else if (key == "velocity_x") slot = &r.velocity_x;
      else if (key == "velocity_y") slot = &r.velocity_y;
      else if (key == "curve_amplitude") slot = &r.curve_amplitude;
      else if (key == "crack_keep_ratio") slot = &r.crack_keep_ratio;
      else if (key == "crack_width") slot = &r.crack_width;
      else if (key == "crack_jitter") slot = &r.crack_jitter;
      else if (key == "crack_sigma") slot = &r.crack_sigma;
      else if (key == "diamond_length") slot = &r.diamond_length;
      else if (key == "diamond_size_ratio") slot = &r.diamond_size_ratio;
      else if (key == "width_jitter") slot = &r.width_jitter;
      else if (key == "spacing_jitter") slot = &r.spacing_jitter;
      else if (key == "edge_jitter") slot = &r.edge_jitter;
      else if (key == "wiggle_amplitude") slot = &r.wiggle_amplitude;
      else if (key == "wiggle_sigma") slot = &r.wiggle_sigma;
      else if (key == "edge_sigma") slot = &r.edge_sigma;
      else if (key == "blur_weight") slot = &r.blur_weight;
      else if (key == "blur_sigma") slot = &r.blur_sigma;
      else if (key == "blur_cell") slot = &r.blur_cell;
      if (slot == nullptr) throw ConfigError("unknown layer range key '" + key + "'");
      *slot = range_from_json(value);
    }
  }
  return r;
}

}  // namespace

Json layer_to_json(const StripeLayerSpec& layer) {
  const LayerKinematics& k = layer.kinematics;
  return {{"role", std::string(role_name(layer.role))},
          {"kind", std::string(kind_name(layer.kind()))},
          {"band", {{"width", layer.band.width()}, {"gap", layer.band.gap()}, {"feather", layer.band.feather()}}},
          {"kinematics",
           {{"center_x", k.center_x()},
            {"center_y", k.center_y()},
            {"theta", k.theta()},
            {"velocity_x", k.velocity_x()},
            {"velocity_y", k.velocity_y()}}},
          {"domain_extent", layer.domain_extent},
          {"params", params_to_json(layer.params)}};
}

StripeLayerSpec layer_from_json(const Json& j) {
  StripeLayerSpec layer;
  layer.role = parse_role(j.at("role").get<std::string>());
  const Json& band = j.at("band");
  layer.band = StripeBand(band.at("width").get<double>(), band.at("gap").get<double>(),
                          band.at("feather").get<double>());
  const Json& k = j.at("kinematics");
  layer.kinematics = LayerKinematics(k.at("center_x").get<double>(), k.at("center_y").get<double>(),
                                     k.at("theta").get<double>(), k.at("velocity_x").get<double>(),
                                     k.at("velocity_y").get<double>());
  layer.domain_extent = j.at("domain_extent").get<double>();
  layer.params = params_from_json(parse_kind(j.at("kind").get<std::string>()), j.at("params"));
  layer.validate();
  return layer;
}

Json spec_to_json(const DegradationSpec& spec) {
  return {{"frame", {{"width", spec.frame.width}, {"height", spec.frame.height}}},
          {"frame_count", spec.frame_count},
          {"seed", spec.seed},
          {"intensity", spec.intensity},
          {"base", layer_to_json(spec.base)},
          {"thick", spec.thick ? layer_to_json(*spec.thick) : Json(nullptr)}};
}

DegradationSpec spec_from_json(const Json& j) {
  DegradationSpec spec;
  spec.frame.width = j.at("frame").at("width").get<int>();
  spec.frame.height = j.at("frame").at("height").get<int>();
  spec.frame_count = j.at("frame_count").get<int>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.intensity = j.at("intensity").get<double>();
  spec.base = layer_from_json(j.at("base"));
  if (j.contains("thick") && !j.at("thick").is_null()) spec.thick = layer_from_json(j.at("thick"));
  spec.validate();
  return spec;
}

Json manifest_to_json(const ClipManifest& manifest) {
  Json inputs = Json::array();
  for (std::size_t i = 0; i < manifest.input_hashes.size(); ++i) {
    Json entry;
    entry["name"] = i < manifest.input_names.size() ? manifest.input_names[i] : std::string();
    entry["hash"] = manifest.input_hashes[i];
    inputs.push_back(std::move(entry));
  }
  return {{"tool_version", manifest.tool_version}, {"spec", spec_to_json(manifest.spec)}, {"inputs", inputs}};
}

ClipManifest manifest_from_json(const Json& j) {
  ClipManifest manifest;
  manifest.tool_version = j.at("tool_version").get<std::string>();
  manifest.spec = spec_from_json(j.at("spec"));
  bool any_name = false;
  for (const auto& entry : j.at("inputs")) {
    manifest.input_names.push_back(entry.at("name").get<std::string>());
    manifest.input_hashes.push_back(entry.at("hash").get<std::string>());
    any_name = any_name || !manifest.input_names.back().empty();
  }
  if (!any_name) manifest.input_names.clear();
  return manifest;
}

SamplingConfig sampling_from_json(const Json& j, SamplingConfig config) {
  if (!j.is_object()) throw ConfigError("sampling config must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "base") config.base = layer_ranges_from_json(value, config.base);
    else if (key == "thick") config.thick = layer_ranges_from_json(value, config.thick);
    else if (key == "intensity") config.intensity = range_from_json(value);
    else if (key == "with_thick") config.with_thick = value.get<bool>();
    else throw ConfigError("unknown sampling key '" + key + "'");
  }
  return config;
}

Json sampling_to_json(const SamplingConfig& config) {
  return {{"intensity", range_to_json(config.intensity)},
          {"with_thick", config.with_thick},
          {"base", layer_ranges_to_json(config.base)},
          {"thick", layer_ranges_to_json(config.thick)}};
}

std::string manifest_to_text(const ClipManifest& manifest) { return manifest_to_json(manifest).dump(2) + "\n"; }

ClipManifest manifest_from_text(std::string_view text) {
  try {
    return manifest_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid manifest: ") + e.what());
  }
}

}  // namespace flicker
