#include "flicker/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "flicker/errors.hpp"
#include "flicker/frame_io.hpp"
#include "flicker/manifest.hpp"
#include "flicker/metrics.hpp"
#include "flicker/noise.hpp"
#include "flicker/rng.hpp"
#include "flicker/rounding.hpp"

namespace flicker {
namespace {

std::string clip_dir_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "clip_%06d", index);
  return buf;
}

std::string pfm_name(const std::string& prefix, int index) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%06d.pfm", prefix.c_str(), index);
  return buf;
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void remove_tree(const fs::path& dir) {
  std::error_code ec;
  fs::remove_all(dir, ec);
  if (ec) throw IoError("cannot remove " + dir.string() + ": " + ec.message());
}

Image gray_to_rgb(const Image& gray) {
  Image out(gray.width(), gray.height(), 3);
  for (int y = 0; y < gray.height(); ++y) {
    for (int x = 0; x < gray.width(); ++x) {
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = gray.at(x, y);
    }
  }
  return out;
}

// Side-by-side strip of equally sized RGB images.
Image hconcat(const std::vector<Image>& parts) {
  int width = 0;
  for (const Image& p : parts) width += p.width();
  Image out(width, parts.front().height(), 3);
  int x0 = 0;
  for (const Image& p : parts) {
    for (int y = 0; y < p.height(); ++y) {
      for (int x = 0; x < p.width(); ++x) {
        for (int c = 0; c < 3; ++c) out.at(x0 + x, y, c) = p.at(x, y, c);
      }
    }
    x0 += p.width();
  }
  return out;
}

struct ClipOutputOptions {
  bool emit_fields = false;
  bool emit_preview = false;
};

// Renders every frame of `spec` onto `clean` and writes the clip into `dir`,
// which must not exist yet.
void write_clip(const DegradationSpec& spec, const std::vector<Image>& clean,
                const std::vector<std::string>& input_names, const fs::path& dir, const ClipOutputOptions& opts) {
  make_dirs(dir / "frames");
  make_dirs(dir / "amplitude");
  if (opts.emit_fields) make_dirs(dir / "fields");

  const DegradationModel model(spec);
  ClipManifest manifest;
  manifest.spec = spec;
  manifest.input_names = input_names;
  for (int t = 0; t < spec.frame_count; ++t) {
    const Image& source = clean[static_cast<std::size_t>(t)];
    const ClipFrame frame = render_clip_frame(model, source, t);
    const Image amplitude = quantize_amplitude(frame.amplitude);
    write_png(dir / "frames" / frame_file_name(t), frame.degraded);
    write_png(dir / "amplitude" / frame_file_name(t), amplitude);
    if (opts.emit_fields) write_pfm(dir / "fields" / pfm_name("", t), frame.occupancy.values);
    if (opts.emit_preview && t == 0) {
      write_png(dir / "preview.png", hconcat({source, frame.degraded, gray_to_rgb(amplitude)}));
    }
    manifest.input_hashes.push_back(image_hash(source));
  }
  write_text(dir / "manifest.json", manifest_to_text(manifest));
}

struct Sequence {
  std::string name;  // relative to the input root; empty for the root itself
  std::vector<fs::path> frames;
};

std::vector<Sequence> discover_sequences(const fs::path& root) {
  std::vector<Sequence> sequences;
  std::vector<fs::path> subdirs;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("input is not a directory: " + root.string());
  for (const auto& entry : fs::directory_iterator(root, ec)) {
    if (entry.is_directory()) subdirs.push_back(entry.path());
  }
  std::sort(subdirs.begin(), subdirs.end());
  if (auto frames = list_frames(root); !frames.empty()) sequences.push_back({"", std::move(frames)});
  for (const auto& dir : subdirs) {
    if (auto frames = list_frames(dir); !frames.empty()) {
      sequences.push_back({dir.filename().string(), std::move(frames)});
    }
  }
  return sequences;
}

std::string relative_name(const Sequence& seq, const fs::path& frame) {
  const std::string file = frame.filename().string();
  return seq.name.empty() ? file : seq.name + "/" + file;
}

std::uint64_t parse_seed(const Json& value) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(value.get<std::int64_t>());
  throw ConfigError("seed must be a nonnegative integer");
}

Json stats_to_json(const LabStats& s) {
  return {{"mean", Json::array({s.mean[0], s.mean[1], s.mean[2]})},
          {"stddev", Json::array({s.stddev[0], s.stddev[1], s.stddev[2]})}};
}

}  // namespace

int run_guarded(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const AlignmentError& e) {
    err << "alignment failed: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const DegenerateNoiseError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const Json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

void PipelineConfig::validate() const {
  sampling.validate();
  if (clip_length < 1) throw ConfigError("clip_length must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (input.empty() || output.empty()) throw ConfigError("input and output directories are required");
  std::error_code ec;
  const fs::path in = fs::weakly_canonical(input, ec);
  const fs::path out = fs::weakly_canonical(output, ec);
  if (in == out) throw ConfigError("input and output directories must differ");
}

PipelineConfig pipeline_config_from_text(const std::string& text) {
  PipelineConfig config;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "input") config.input = value.get<std::string>();
      else if (key == "output") config.output = value.get<std::string>();
      else if (key == "clip_length") config.clip_length = value.get<int>();
      else if (key == "seed") config.seed = parse_seed(value);
      else if (key == "workers") config.workers = value.get<int>();
      else if (key == "emit_fields") config.emit_fields = value.get<bool>();
      else if (key == "emit_preview") config.emit_preview = value.get<bool>();
      else if (key == "sampling") config.sampling = sampling_from_json(value);
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  }
  return config;
}

PipelineConfig load_pipeline_config(const fs::path& path) { return pipeline_config_from_text(read_text(path)); }

SynthSummary cmd_synth(const PipelineConfig& config, std::ostream& log) {
  config.validate();
  const std::vector<Sequence> sequences = discover_sequences(config.input);
  if (sequences.empty()) throw IoError("no input frames found under " + config.input.string());

  struct Job {
    int index;
    const Sequence* sequence;
    std::size_t first;
  };
  std::vector<Job> jobs;
  for (const Sequence& seq : sequences) {
    const std::size_t clips = seq.frames.size() / static_cast<std::size_t>(config.clip_length);
    if (clips == 0) {
      log << "skipping sequence '" << seq.name << "': " << seq.frames.size() << " frames is shorter than one clip\n";
    }
    for (std::size_t c = 0; c < clips; ++c) {
      jobs.push_back({static_cast<int>(jobs.size()), &seq, c * static_cast<std::size_t>(config.clip_length)});
    }
  }
  if (jobs.empty()) throw IoError("no input sequence holds a full clip of " + std::to_string(config.clip_length) + " frames");

  make_dirs(config.output);
  const ClipOutputOptions opts{config.emit_fields, config.emit_preview};

  std::vector<std::exception_ptr> failures(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      try {
        std::vector<fs::path> paths(job.sequence->frames.begin() + static_cast<std::ptrdiff_t>(job.first),
                                    job.sequence->frames.begin() +
                                        static_cast<std::ptrdiff_t>(job.first + static_cast<std::size_t>(config.clip_length)));
        const std::vector<Image> clean = read_frames(paths, 3);
        std::vector<std::string> names;
        for (const auto& p : paths) names.push_back(relative_name(*job.sequence, p));

        const FieldFrameContext frame{clean.front().width(), clean.front().height()};
        const DegradationSpec spec =
            sample_spec(config.sampling, frame, config.clip_length, derive_key(config.seed, static_cast<std::uint64_t>(job.index)));

        const fs::path final_dir = config.output / clip_dir_name(job.index);
        const fs::path staging = config.output / ("." + clip_dir_name(job.index) + ".partial");
        remove_tree(staging);
        write_clip(spec, clean, names, staging, opts);
        remove_tree(final_dir);
        std::error_code ec;
        fs::rename(staging, final_dir, ec);
        if (ec) throw IoError("cannot publish " + final_dir.string() + ": " + ec.message());

        const std::lock_guard lock(log_mutex);
        log << clip_dir_name(job.index) << ": base=" << kind_name(spec.base.kind())
            << " thick=" << (spec.thick ? kind_name(spec.thick->kind()) : std::string_view("none")) << '\n';
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const int threads = std::min<int>(config.workers, static_cast<int>(jobs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return {static_cast<int>(jobs.size()), static_cast<int>(jobs.size()) * config.clip_length};
}

void cmd_replay(const fs::path& manifest_path, const fs::path& input_root, const fs::path& output_dir) {
  const ClipManifest manifest = manifest_from_text(read_text(manifest_path));
  const DegradationSpec& spec = manifest.spec;
  if (manifest.input_names.size() != static_cast<std::size_t>(spec.frame_count) ||
      manifest.input_hashes.size() != manifest.input_names.size()) {
    throw ConfigError("manifest does not list one named input frame per clip frame");
  }
  std::vector<fs::path> paths;
  for (const auto& name : manifest.input_names) paths.push_back(input_root / name);
  const std::vector<Image> clean = read_frames(paths, 3);
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (image_hash(clean[i]) != manifest.input_hashes[i]) {
      throw IoError("input frame " + paths[i].string() + " does not match the manifest hash");
    }
  }
  std::error_code ec;
  if (fs::exists(output_dir, ec) && !fs::is_empty(output_dir, ec)) {
    throw IoError("replay output directory is not empty: " + output_dir.string());
  }
  write_clip(spec, clean, manifest.input_names, output_dir, {});
}

Image gallery_test_frame(int width, int height) {
  Image frame(width, height, 3);
  const double cx = width * 0.62;
  const double cy = height * 0.45;
  const double radius = std::min(width, height) * 0.28;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double fx = static_cast<double>(x) / std::max(1, width - 1);
      const double fy = static_cast<double>(y) / std::max(1, height - 1);
      double r = 70 + 150 * fx;
      double g = 90 + 120 * fy;
      double b = 200 - 110 * fx;
      if (std::hypot(x - cx, y - cy) < radius) {
        r = 235;
        g = 210;
        b = 120;
      }
      if (((x / 16) + (y / 16)) % 2 == 0 && x < width / 4) {
        r *= 0.85;
        g *= 0.85;
        b *= 0.85;
      }
      frame.at(x, y, 0) = to_byte(r);
      frame.at(x, y, 1) = to_byte(g);
      frame.at(x, y, 2) = to_byte(b);
    }
  }
  return frame;
}

Gallery build_gallery(const GalleryOptions& options) {
  if (options.cell_width < 16 || options.cell_height < 16) throw ConfigError("gallery cells must be at least 16x16");
  SamplingConfig sampling = options.sampling;
  sampling.with_thick = true;
  sampling.validate();

  const FieldFrameContext frame{options.cell_width, options.cell_height};
  const Image card = gallery_test_frame(options.cell_width, options.cell_height);
  Gallery gallery;
  gallery.grid = Image(kStripeKindCount * options.cell_width, kStripeKindCount * options.cell_height, 3);
  for (int row = 0; row < kStripeKindCount; ++row) {
    for (int col = 0; col < kStripeKindCount; ++col) {
      GalleryCell cell;
      cell.base = static_cast<StripeKind>(row);
      cell.thick = static_cast<StripeKind>(col);
      SamplingConfig cfg = sampling;
      cfg.base.kinds = {cell.base};
      cfg.thick.kinds = {cell.thick};
      cell.spec = sample_spec(cfg, frame, 1, derive_key(options.seed, static_cast<std::uint64_t>(row * kStripeKindCount + col)));
      const RenderedField field = render_field(cell.spec, 0);
      const Image degraded = apply_degradation(card, field.occupancy, cell.spec.intensity);
      for (int y = 0; y < options.cell_height; ++y) {
        for (int x = 0; x < options.cell_width; ++x) {
          for (int c = 0; c < 3; ++c) {
            gallery.grid.at(col * options.cell_width + x, row * options.cell_height + y, c) = degraded.at(x, y, c);
          }
        }
      }
      gallery.cells.push_back(std::move(cell));
    }
  }
  return gallery;
}

Gallery cmd_gallery(const GalleryOptions& options, const fs::path& output_dir) {
  Gallery gallery = build_gallery(options);
  make_dirs(output_dir);
  write_png(output_dir / "gallery.png", gallery.grid);
  Json cells = Json::array();
  for (const GalleryCell& cell : gallery.cells) {
    cells.push_back({{"base", std::string(kind_name(cell.base))},
                     {"thick", std::string(kind_name(cell.thick))},
                     {"spec", spec_to_json(cell.spec)}});
  }
  const Json doc = {{"tool_version", kToolVersion},
                    {"cell_width", options.cell_width},
                    {"cell_height", options.cell_height},
                    {"rows", "base kind"},
                    {"columns", "thick kind"},
                    {"cells", cells}};
  write_text(output_dir / "gallery.json", doc.dump(2) + "\n");
  return gallery;
}

double cmd_famse(const fs::path& pred_dir, const fs::path& truth_dir) {
  const std::vector<fs::path> pred_paths = list_frames(pred_dir);
  const std::vector<fs::path> truth_paths = list_frames(truth_dir);
  if (pred_paths.empty() || truth_paths.empty()) throw IoError("fa-mse needs at least one map in each directory");
  if (pred_paths.size() != truth_paths.size()) {
    throw ConfigError("map counts differ: " + std::to_string(pred_paths.size()) + " predicted vs " +
                      std::to_string(truth_paths.size()) + " ground truth");
  }
  std::vector<Grid<double>> pred;
  std::vector<AmplitudeMap> truth;
  for (std::size_t i = 0; i < pred_paths.size(); ++i) {
    pred.push_back(dequantize_amplitude(read_image(pred_paths[i], 1)).values);
    truth.push_back(dequantize_amplitude(read_image(truth_paths[i], 1)));
    if (!pred.back().same_shape(truth.back().values)) {
      throw ConfigError("map " + pred_paths[i].filename().string() + " differs in size from its ground truth");
    }
  }
  return fa_mse(PredictedConfidenceMap(std::move(pred)), truth);
}

std::string format_loss(double loss) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", loss);
  return buf;
}

double cmd_check_zeroinit(const ZeroInitOptions& options) {
  if (options.out_dim < 1 || options.prior_dim < 1 || options.samples < 1) {
    throw ConfigError("dimensions must be >= 1");
  }
  if (options.trials < 1) throw ConfigError("trials must be >= 1");
  const auto out = static_cast<std::size_t>(options.out_dim);
  const auto d = static_cast<std::size_t>(options.prior_dim);
  const auto m = static_cast<std::size_t>(options.samples);

  double worst = 0.0;
  for (int trial = 0; trial < options.trials; ++trial) {
    CounterRng rng(derive_key(options.seed, static_cast<std::uint64_t>(trial)));
    Matrix w4(out, 4 * d);
    Matrix x(4 * d, m);
    Matrix prior(d, m);
    for (std::size_t r = 0; r < w4.rows(); ++r) {
      for (std::size_t c = 0; c < w4.cols(); ++c) w4(r, c) = rng.normal();
    }
    for (std::size_t r = 0; r < x.rows(); ++r) {
      for (std::size_t c = 0; c < m; ++c) x(r, c) = rng.normal();
    }
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < m; ++c) prior(r, c) = rng.uniform();
    }
    InjectionWeights weights = zero_init_augment(w4);
    if (options.perturb != 0.0) {
      weights.appended(0, 0) = options.perturb;
      prior(0, 0) = 1.0;
    }
    worst = std::max(worst, verify_injection_identity(weights, x, prior));
  }
  return worst;
}

DegradationSpec cmd_field(const FieldDumpOptions& options, const fs::path& output_dir) {
  DegradationSpec spec;
  if (options.manifest) {
    spec = manifest_from_text(read_text(*options.manifest)).spec;
  } else {
    spec = sample_spec(options.sampling, {options.width, options.height}, options.frames, options.seed);
  }
  make_dirs(output_dir);
  const DegradationModel model(spec);
  for (int t = 0; t < spec.frame_count; ++t) {
    write_pfm(output_dir / pfm_name("", t), model.render(t).occupancy.values);
    if (options.per_layer) {
      write_pfm(output_dir / pfm_name("base_", t), model.render_layer(LayerRole::kBase, t).values);
      if (spec.thick) write_pfm(output_dir / pfm_name("thick_", t), model.render_layer(LayerRole::kThick, t).values);
    }
  }
  return spec;
}

std::string report_to_text(const AlignmentReport& report) {
  const Json doc = {{"crop",
                     {{"left", report.crop.left},
                      {"top", report.crop.top},
                      {"width", report.crop.width},
                      {"height", report.crop.height}}},
                    {"temporal_offset", report.temporal_offset},
                    {"correlation", report.correlation},
                    {"residual", report.residual},
                    {"low_confidence", report.low_confidence},
                    {"source_lab", stats_to_json(report.source)},
                    {"reference_lab", stats_to_json(report.reference)}};
  return doc.dump(2) + "\n";
}

AlignmentReport cmd_align(const fs::path& captured_dir, const fs::path& reference_dir, const fs::path& output_dir,
                          const AlignOptions& options) {
  const std::vector<fs::path> captured_paths = list_frames(captured_dir);
  const std::vector<fs::path> reference_paths = list_frames(reference_dir);
  if (captured_paths.empty() || reference_paths.empty()) throw IoError("align needs frames in both directories");
  const std::vector<Image> captured = read_frames(captured_paths, 3);
  const std::vector<Image> reference = read_frames(reference_paths, 3);

  const AlignedClip aligned = align_clip(captured, reference, options);
  make_dirs(output_dir / "aligned");
  for (std::size_t i = 0; i < aligned.frames.size(); ++i) {
    write_png(output_dir / "aligned" / frame_file_name(aligned.first_reference_frame + static_cast<int>(i)),
              aligned.frames[i]);
  }
  write_text(output_dir / "report.json", report_to_text(aligned.report));
  return aligned.report;
}

}  // namespace flicker
