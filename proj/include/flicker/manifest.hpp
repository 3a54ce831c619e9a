// JSON forms of specs, sampling configs and clip manifests. Doubles are
// written with round-trip precision, so a parsed manifest re-renders the
// exact same clip.

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "flicker/compositor.hpp"
#include "flicker/sampling.hpp"

namespace flicker {

using Json = nlohmann::ordered_json;

Json layer_to_json(const StripeLayerSpec& layer);
StripeLayerSpec layer_from_json(const Json& j);

Json spec_to_json(const DegradationSpec& spec);
DegradationSpec spec_from_json(const Json& j);

Json manifest_to_json(const ClipManifest& manifest);
ClipManifest manifest_from_json(const Json& j);

// Missing keys keep the values already in `defaults`.
SamplingConfig sampling_from_json(const Json& j, SamplingConfig defaults = default_sampling_config());
Json sampling_to_json(const SamplingConfig& config);

std::string manifest_to_text(const ClipManifest& manifest);
// Throws ConfigError on malformed text or missing fields.
ClipManifest manifest_from_text(std::string_view text);

}  // namespace flicker
