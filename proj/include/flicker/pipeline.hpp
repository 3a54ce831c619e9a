// Batch commands behind the flickerband CLI. Each command throws
// ConfigError, IoError or InvariantError; run_guarded maps those onto exit
// codes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flicker/align.hpp"
#include "flicker/compositor.hpp"
#include "flicker/sampling.hpp"

namespace flicker {

namespace fs = std::filesystem;

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
  kExitInvariant = 4,
};

// Runs `command`, printing any error to `err`.
int run_guarded(const std::function<int()>& command, std::ostream& err);

struct PipelineConfig {
  fs::path input;
  fs::path output;
  SamplingConfig sampling = default_sampling_config();
  int clip_length = 16;
  std::uint64_t seed = 0;
  int workers = 1;
  bool emit_fields = false;
  bool emit_preview = false;

  // Throws ConfigError.
  void validate() const;
};

// Reads a JSON config file; keys absent from the file keep their defaults.
PipelineConfig load_pipeline_config(const fs::path& path);
PipelineConfig pipeline_config_from_text(const std::string& text);

// Output layout per clip: clip_NNNNNN/{frames,amplitude}/NNNNNN.png and
// clip_NNNNNN/manifest.json, plus fields/*.pfm and preview.png when enabled.
struct SynthSummary {
  int clips = 0;
  int frames = 0;
};
SynthSummary cmd_synth(const PipelineConfig& config, std::ostream& log);

// Re-renders one clip from its manifest; the source frames are looked up by
// the names recorded in the manifest, relative to `input_root`.
void cmd_replay(const fs::path& manifest_path, const fs::path& input_root, const fs::path& output_dir);

struct GalleryOptions {
  SamplingConfig sampling = default_sampling_config();
  std::uint64_t seed = 0;
  int cell_width = 256;
  int cell_height = 144;
};

struct GalleryCell {
  StripeKind base = StripeKind::kUniform;
  StripeKind thick = StripeKind::kUniform;
  DegradationSpec spec;
};

struct Gallery {
  Image grid;
  std::vector<GalleryCell> cells;  // row-major: row = base kind, column = thick kind
};

// Deterministic test card the gallery cells are rendered onto.
Image gallery_test_frame(int width, int height);
Gallery build_gallery(const GalleryOptions& options);
// Writes gallery.png and gallery.json into `output_dir`.
Gallery cmd_gallery(const GalleryOptions& options, const fs::path& output_dir);

// Loads 8-bit single-channel maps from both directories (value / 255).
double cmd_famse(const fs::path& pred_dir, const fs::path& truth_dir);
std::string format_loss(double loss);

struct ZeroInitOptions {
  int out_dim = 8;
  int prior_dim = 2;  // latent input width is 4 * prior_dim
  int samples = 16;
  int trials = 100;
  double perturb = 0.0;
  std::uint64_t seed = 0;
};
// Maximum deviation across trials. Throws ConfigError on invalid sizes.
double cmd_check_zeroinit(const ZeroInitOptions& options);

struct FieldDumpOptions {
  std::optional<fs::path> manifest;
  SamplingConfig sampling = default_sampling_config();
  std::uint64_t seed = 0;
  int width = 640;
  int height = 360;
  int frames = 16;
  bool per_layer = false;
};
// Writes fused occupancy as NNNNNN.pfm (and base_/thick_ prefixed layers
// when per_layer is set). Returns the spec that was rendered.
DegradationSpec cmd_field(const FieldDumpOptions& options, const fs::path& output_dir);

// Writes report.json and aligned/NNNNNN.png (numbered by reference frame).
AlignmentReport cmd_align(const fs::path& captured_dir, const fs::path& reference_dir, const fs::path& output_dir,
                          const AlignOptions& options);

std::string report_to_text(const AlignmentReport& report);

}  // namespace flicker
