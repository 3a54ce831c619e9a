// Registration of a captured clip against its reference: border crop and
// stretch, integer-frame temporal offset from grayscale-difference
// signatures, and LAB statistics transfer.

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "flicker/color.hpp"
#include "flicker/image.hpp"

namespace flicker {

class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CropRect {
  int left = 0;
  int top = 0;
  int width = 0;
  int height = 0;

  bool operator==(const CropRect&) const = default;
};

inline constexpr int kMinCropSide = 16;

// Trims outer rows, then outer columns, whose mean luma is below
// `threshold`. Throws AlignmentError if fewer than 16x16 pixels remain.
CropRect detect_content_rect(const Image& frame, double threshold = 20.0);

// Bilinear resample of `rect` to out_width x out_height (pixel centers aligned).
Image crop_and_stretch(const Image& frame, const CropRect& rect, int out_width, int out_height);

// s(t) = mean |gray(t+1) - gray(t)|, one entry per consecutive pair.
std::vector<double> difference_signature(std::span<const Image> frames);

struct OffsetEstimate {
  int offset = 0;            // lq frame t + offset shows ref frame t
  double correlation = 0.0;  // normalized cross-correlation at the offset
  double residual = 0.0;     // RMS gap of the z-scored signatures, sqrt(2 (1 - r))
  bool low_confidence = false;
};

inline constexpr double kResidualFlag = 0.6;

// Searches offsets in [-window, window]; ties go to the smaller |offset|.
// Throws std::invalid_argument if either sequence is shorter than window + 2
// frames and AlignmentError if a signature is flat.
OffsetEstimate temporal_offset(std::span<const Image> lq, std::span<const Image> ref, int window);
// Same search on precomputed signatures.
OffsetEstimate signature_offset(std::span<const double> lq, std::span<const double> ref, int window);

// Per-channel (c - mu_src) * sigma_ref / sigma_src + mu_ref. Channels with no
// spread in the source collapse to the reference mean.
std::vector<Lab> lab_transfer(std::span<const Lab> src, const LabStats& src_stats, const LabStats& ref_stats);

// Converts, transfers, and clamps back into 8-bit sRGB. Throws
// std::invalid_argument on negative or non-finite reference spreads.
Image lab_color_transfer(const Image& src, const LabStats& ref_stats);
Image lab_color_transfer(const Image& src, const LabStats& src_stats, const LabStats& ref_stats);

struct AlignOptions {
  double border_threshold = 20.0;
  int window = 15;
  bool per_frame_color = false;
};

struct AlignmentReport {
  CropRect crop;
  int temporal_offset = 0;
  double correlation = 0.0;
  double residual = 0.0;
  bool low_confidence = false;
  LabStats source;
  LabStats reference;
};

struct AlignedClip {
  AlignmentReport report;
  // One frame per reference index covered by the aligned capture.
  std::vector<Image> frames;
  int first_reference_frame = 0;
};

AlignedClip align_clip(std::span<const Image> captured, std::span<const Image> reference,
                       const AlignOptions& options);

}  // namespace flicker
