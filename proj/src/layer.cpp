#include "flicker/layer.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace flicker {
namespace {

constexpr std::array<std::string_view, kStripeKindCount> kKindNames = {"uniform", "curve", "cracked",
                                                                      "diamond", "complex"};

}  // namespace

std::string_view kind_name(StripeKind kind) { return kKindNames.at(static_cast<std::size_t>(kind)); }

StripeKind parse_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<StripeKind>(i);
  }
  throw std::invalid_argument("unknown stripe kind '" + std::string(name) + "'");
}

std::string_view role_name(LayerRole role) { return role == LayerRole::kBase ? "base" : "thick"; }

void StripeLayerSpec::validate() const {
  // Re-run the band and kinematics checks; they may have been filled field by field.
  StripeBand(band.width(), band.gap(), band.feather());
  if (!(std::isfinite(domain_extent) && domain_extent > 0.0)) {
    throw std::invalid_argument("layer domain extent must be positive");
  }
  std::visit(
      [](const auto& p) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(p)>, UniformParams>) p.validate();
      },
      params);
}

StripeLayer::StripeLayer(const StripeLayerSpec& spec, std::uint64_t key) : spec_(spec) {
  spec_.validate();
  if (const auto* cracked = std::get_if<CrackedParams>(&spec_.params)) {
    baked_ = CrackedField::bake(*cracked, spec_.band, spec_.domain_extent, key);
  } else if (const auto* complex = std::get_if<ComplexParams>(&spec_.params)) {
    baked_ = ComplexField::bake(*complex, spec_.band, spec_.domain_extent, key);
  }
}

double StripeLayer::occupancy(double x, double y, double t) const {
  const LayerKinematics& kin = spec_.kinematics;
  const StripeBand& band = spec_.band;
  switch (spec_.kind()) {
    case StripeKind::kUniform:
      return uniform_occupancy(x, y, t, kin, band);
    case StripeKind::kCurve:
      return curve_occupancy(x, y, t, kin, band, std::get<CurveParams>(spec_.params));
    case StripeKind::kCracked:
      return cracked_occupancy(x, y, t, kin, band, std::get<CrackedField>(baked_));
    case StripeKind::kDiamond:
      return diamond_occupancy(x, y, t, kin, band, std::get<DiamondParams>(spec_.params));
    case StripeKind::kComplex:
      return complex_occupancy(x, y, t, kin, band, std::get<ComplexField>(baked_));
  }
  throw std::logic_error("unhandled stripe kind");
}

template <typename Eval>
void StripeLayer::render_with(double t, Grid<double>& out, Eval&& eval) const {
  // Same expressions as parallel_coord/orthogonal_coord, split into column
  // and row terms; results stay bit-identical to pointwise evaluation.
  const LayerKinematics& kin = spec_.kinematics;
  const double du = parallel_shift(t, kin);
  const double dv = phase_shift(t, kin);
  const auto width = static_cast<std::size_t>(out.width());
  std::vector<double> col_u(width);
  std::vector<double> col_v(width);
  for (std::size_t x = 0; x < width; ++x) {
    const double rx = static_cast<double>(x) - kin.center_x();
    col_u[x] = rx * kin.cos_theta();
    col_v[x] = -rx * kin.sin_theta();
  }
  for (int y = 0; y < out.height(); ++y) {
    const double ry = y - kin.center_y();
    const double row_u = ry * kin.sin_theta();
    const double row_v = ry * kin.cos_theta();
    auto row = out.row(y);
    for (std::size_t x = 0; x < width; ++x) {
      row[x] = eval((col_u[x] + row_u) - du, (col_v[x] + row_v) - dv);
    }
  }
}

void StripeLayer::render(double t, Grid<double>& out) const {
  const StripeBand& band = spec_.band;
  switch (spec_.kind()) {
    case StripeKind::kUniform:
      render_with(t, out, [&](double, double v) { return uniform_occupancy_at(v, band); });
      return;
    case StripeKind::kCurve: {
      const auto& p = std::get<CurveParams>(spec_.params);
      render_with(t, out, [&](double u, double v) { return curve_occupancy_at(u, v, band, p); });
      return;
    }
    case StripeKind::kCracked: {
      const auto& f = std::get<CrackedField>(baked_);
      render_with(t, out, [&](double u, double v) { return cracked_occupancy_at(u, v, band, f); });
      return;
    }
    case StripeKind::kDiamond: {
      const auto& p = std::get<DiamondParams>(spec_.params);
      render_with(t, out, [&](double u, double v) { return diamond_occupancy_at(u, v, band, p); });
      return;
    }
    case StripeKind::kComplex: {
      const auto& f = std::get<ComplexField>(baked_);
      render_with(t, out, [&](double u, double v) { return complex_occupancy_at(u, v, band, f); });
      return;
    }
  }
}

}  // namespace flicker
