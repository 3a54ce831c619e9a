#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "flicker/field.hpp"
#include "flicker/grid.hpp"
#include "flicker/stripes.hpp"

namespace flicker {

enum class StripeKind { kUniform = 0, kCurve, kCracked, kDiamond, kComplex };
inline constexpr int kStripeKindCount = 5;

enum class LayerRole { kBase = 0, kThick = 1 };

std::string_view kind_name(StripeKind kind);
// Throws std::invalid_argument for unknown names.
StripeKind parse_kind(std::string_view name);
std::string_view role_name(LayerRole role);

struct UniformParams {
  bool operator==(const UniformParams&) const = default;
};

// Alternative order matches StripeKind.
using KindParams = std::variant<UniformParams, CurveParams, CrackedParams, DiamondParams, ComplexParams>;

struct StripeLayerSpec {
  LayerRole role = LayerRole::kBase;
  StripeBand band;
  LayerKinematics kinematics;
  KindParams params;
  // Side of the square (u, v) window, centered on the layer center, that
  // baked noise and per-stripe tables cover.
  double domain_extent = 256.0;

  StripeKind kind() const { return static_cast<StripeKind>(params.index()); }
  void validate() const;
  bool operator==(const StripeLayerSpec&) const = default;
};

// Immutable evaluator for one layer with its noise baked in.
class StripeLayer {
 public:
  // `key` seeds every stochastic table of the layer.
  StripeLayer(const StripeLayerSpec& spec, std::uint64_t key);

  double occupancy(double x, double y, double t) const;
  // Fills `out` (already sized to the frame) with occupancy at frame t.
  void render(double t, Grid<double>& out) const;

  const StripeLayerSpec& spec() const { return spec_; }

 private:
  template <typename Eval>
  void render_with(double t, Grid<double>& out, Eval&& eval) const;

  StripeLayerSpec spec_;
  std::variant<std::monostate, CrackedField, ComplexField> baked_;
};

}  // namespace flicker
