// Fixtures shared by the unit tests and the acceptance suite.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "flicker/image.hpp"
#include "flicker/layer.hpp"
#include "flicker/rng.hpp"

namespace flicker::testing {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device entropy;
    path_ = fs::temp_directory_path() / ("flicker_" + tag + "_" + std::to_string(entropy()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& child) const { return path_ / child; }

 private:
  fs::path path_;
};

inline Image constant_image(int width, int height, std::uint8_t value, int channels = 3) {
  return Image(width, height, channels, value);
}

// Smooth gradient plus per-frame shifted texture; consecutive frames differ.
inline Image textured_frame(int width, int height, int t, std::uint64_t seed) {
  Image img(width, height, 3);
  CounterRng rng(derive_key(seed, static_cast<std::uint64_t>(t)));
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double amp = rng.uniform(20.0, 70.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double wave = amp * std::sin(0.21 * x + 0.13 * y + phase);
      img.at(x, y, 0) = static_cast<std::uint8_t>(std::clamp(110.0 + wave + 0.4 * x, 0.0, 255.0));
      img.at(x, y, 1) = static_cast<std::uint8_t>(std::clamp(100.0 - 0.6 * wave + 0.5 * y, 0.0, 255.0));
      img.at(x, y, 2) = static_cast<std::uint8_t>(std::clamp(140.0 + 0.3 * wave, 0.0, 255.0));
    }
  }
  return img;
}

// Every regular file under `root`, keyed by relative path.
inline std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    files[fs::relative(entry.path(), root).generic_string()] =
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return files;
}

// Random layer of a given kind, including parameter extremes. Noise sigmas
// are kept moderate so thousands of layers bake quickly.
inline StripeLayerSpec fuzz_layer(StripeKind kind, CounterRng& rng, double domain_extent) {
  StripeLayerSpec spec;
  spec.role = LayerRole::kBase;
  const double width = rng.coin() ? rng.uniform(1.0, 4.0) : rng.uniform(1.0, 90.0);
  const double gap = rng.coin() ? 0.0 : rng.uniform(0.0, 150.0);
  const double feather = std::max(1e-6, rng.uniform(0.0, 1.0)) * width / 2.0;
  spec.band = StripeBand(width, gap, feather);
  spec.kinematics = LayerKinematics(rng.uniform(-100.0, 150.0), rng.uniform(-100.0, 150.0),
                                    rng.uniform(-4.0, 4.0), rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0));
  spec.domain_extent = domain_extent;
  switch (kind) {
    case StripeKind::kUniform:
      spec.params = UniformParams{};
      break;
    case StripeKind::kCurve: {
      CurveParams p;
      p.amplitude = rng.uniform(0.0, 200.0);
      p.sign = rng.coin() ? 1 : -1;
      p.centering = rng.uniform(-80.0, 80.0);
      p.u_mid = rng.uniform(-100.0, 100.0);
      p.u_span = rng.uniform(1.0, 300.0);
      spec.params = p;
      break;
    }
    case StripeKind::kCracked: {
      CrackedParams p;
      p.keep_ratio = std::max(1e-3, rng.uniform());
      p.crack_count = static_cast<int>(rng.uniform_int(0, 6));
      p.crack_base_width = rng.uniform(0.1, 10.0);
      p.jitter_ratio = rng.coin() ? 0.0 : rng.uniform(0.0, 3.0);
      p.noise_sigma = rng.uniform(0.5, 6.0);
      spec.params = p;
      break;
    }
    case StripeKind::kDiamond: {
      DiamondParams p;
      p.length = rng.uniform(1.0, 120.0);
      p.size_ratio = std::clamp(rng.uniform(), 1e-3, 1.0 - 1e-3);
      spec.params = p;
      break;
    }
    case StripeKind::kComplex: {
      ComplexParams p;
      p.width_jitter = rng.uniform(0.0, 2.0 * width);
      p.spacing_jitter = rng.uniform(0.0, 20.0);
      p.edge_jitter = rng.coin() ? 0.0 : rng.uniform(0.0, 10.0);
      p.wiggle_amplitude = rng.coin() ? 0.0 : rng.uniform(0.0, 20.0);
      p.wiggle_sigma = rng.uniform(0.5, 6.0);
      p.edge_sigma = rng.uniform(0.5, 3.0);
      p.blur_weight = rng.coin() ? 0.0 : rng.uniform(0.0, 8.0);
      p.blur_sigma = rng.uniform(0.5, 3.0);
      p.blur_cell = rng.uniform(1.0, 8.0);
      spec.params = p;
      break;
    }
  }
  return spec;
}

}  // namespace flicker::testing
