// flickerband: synthesize banded clips and run the alignment and metric tools.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "flicker/errors.hpp"
#include "flicker/pipeline.hpp"

namespace {

using namespace flicker;

struct GlobalOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool emit_fields = false;
  bool emit_preview = false;
};

PipelineConfig base_config(const GlobalOptions& g) {
  PipelineConfig config = g.config.empty() ? PipelineConfig{} : load_pipeline_config(g.config);
  if (g.seed) config.seed = *g.seed;
  if (g.workers) config.workers = *g.workers;
  if (g.emit_fields) config.emit_fields = true;
  if (g.emit_preview) config.emit_preview = true;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Procedural flicker-banding synthesis and capture alignment"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  GlobalOptions g;
  app.add_option("--config", g.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "global seed (overrides the config)");
  app.add_option("--workers", g.workers, "concurrent clip workers")->check(CLI::PositiveNumber);
  app.add_flag("--emit-fields", g.emit_fields, "also write raw occupancy fields as PFM");
  app.add_flag("--emit-preview", g.emit_preview, "also write a preview strip per clip");

  std::string input;
  std::string output;
  std::optional<int> clip_length;
  auto* synth = app.add_subcommand("synth", "degrade clean frame sequences into banded clips");
  synth->add_option("-i,--input", input, "directory of clean frames or of sequence directories");
  synth->add_option("-o,--output", output, "output root");
  synth->add_option("--clip-length", clip_length, "frames per clip")->check(CLI::PositiveNumber);

  std::string manifest;
  auto* replay = app.add_subcommand("replay", "re-render one clip from its manifest");
  replay->add_option("manifest", manifest, "manifest.json")->required();
  replay->add_option("-i,--input", input, "input root the manifest names are relative to")->required();
  replay->add_option("-o,--output", output, "new clip directory")->required();

  GalleryOptions gallery_opts;
  auto* gallery = app.add_subcommand("gallery", "5x5 grid of base kind by thick kind");
  gallery->add_option("-o,--output", output, "output directory")->required();
  gallery->add_option("--cell-width", gallery_opts.cell_width)->check(CLI::Range(16, 4096));
  gallery->add_option("--cell-height", gallery_opts.cell_height)->check(CLI::Range(16, 4096));

  std::string pred_dir;
  std::string truth_dir;
  auto* famse = app.add_subcommand("famse", "flicker-aware MSE between two map directories");
  famse->add_option("pred", pred_dir, "predicted confidence maps")->required();
  famse->add_option("truth", truth_dir, "ground-truth amplitude maps")->required();

  ZeroInitOptions zero_opts;
  auto* zeroinit = app.add_subcommand("check-zeroinit", "verify the zero-initialized injection identity");
  zeroinit->add_option("--out-dim", zero_opts.out_dim)->check(CLI::PositiveNumber);
  zeroinit->add_option("--prior-dim", zero_opts.prior_dim)->check(CLI::PositiveNumber);
  zeroinit->add_option("--samples", zero_opts.samples)->check(CLI::PositiveNumber);
  zeroinit->add_option("--trials", zero_opts.trials)->check(CLI::PositiveNumber);
  zeroinit->add_option("--perturb", zero_opts.perturb, "set one appended weight to this value");

  std::string captured_dir;
  std::string reference_dir;
  AlignOptions align_opts;
  auto* align = app.add_subcommand("align", "register a captured clip to its reference");
  align->add_option("captured", captured_dir)->required();
  align->add_option("reference", reference_dir)->required();
  align->add_option("-o,--output", output)->required();
  align->add_option("--border-threshold", align_opts.border_threshold, "mean luma below which a row is border");
  align->add_option("--window", align_opts.window, "temporal search window in frames")->check(CLI::NonNegativeNumber);
  align->add_flag("--per-frame-color", align_opts.per_frame_color, "color statistics per frame instead of per clip");

  FieldDumpOptions field_opts;
  std::string field_manifest;
  auto* field = app.add_subcommand("field", "dump raw occupancy fields");
  field->add_option("-o,--output", output)->required();
  field->add_option("--manifest", field_manifest, "render the spec of an existing clip")->check(CLI::ExistingFile);
  field->add_option("--width", field_opts.width)->check(CLI::PositiveNumber);
  field->add_option("--height", field_opts.height)->check(CLI::PositiveNumber);
  field->add_option("--frames", field_opts.frames)->check(CLI::PositiveNumber);
  field->add_flag("--per-layer", field_opts.per_layer, "also write base_ and thick_ layers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  return run_guarded(
      [&]() -> int {
        if (synth->parsed()) {
          PipelineConfig config = base_config(g);
          if (!input.empty()) config.input = input;
          if (!output.empty()) config.output = output;
          if (clip_length) config.clip_length = *clip_length;
          const SynthSummary summary = cmd_synth(config, std::cout);
          std::cout << "wrote " << summary.clips << " clips (" << summary.frames << " frames)\n";
        } else if (replay->parsed()) {
          cmd_replay(manifest, input, output);
          std::cout << "replayed " << manifest << " into " << output << '\n';
        } else if (gallery->parsed()) {
          const PipelineConfig config = base_config(g);
          gallery_opts.sampling = config.sampling;
          gallery_opts.seed = config.seed;
          const Gallery result = cmd_gallery(gallery_opts, output);
          std::cout << "gallery " << result.grid.width() << "x" << result.grid.height() << ", "
                    << result.cells.size() << " cells\n";
        } else if (famse->parsed()) {
          std::cout << "fa-mse: " << format_loss(cmd_famse(pred_dir, truth_dir)) << '\n';
        } else if (zeroinit->parsed()) {
          if (g.seed) zero_opts.seed = *g.seed;
          const double deviation = cmd_check_zeroinit(zero_opts);
          std::cout << "max deviation: " << deviation << '\n';
          return deviation == 0.0 ? kExitOk : kExitInvariant;
        } else if (align->parsed()) {
          const AlignmentReport report = cmd_align(captured_dir, reference_dir, output, align_opts);
          std::cout << report_to_text(report);
        } else if (field->parsed()) {
          const PipelineConfig config = base_config(g);
          field_opts.sampling = config.sampling;
          field_opts.seed = config.seed;
          if (!field_manifest.empty()) field_opts.manifest = fs::path(field_manifest);
          const DegradationSpec spec = cmd_field(field_opts, output);
          std::cout << "wrote " << spec.frame_count << " fields of " << spec.frame.width << "x"
                    << spec.frame.height << '\n';
        }
        return kExitOk;
      },
      std::cerr);
}
