#include "flicker/align.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "flicker/rounding.hpp"

namespace flicker {
namespace {

double row_mean(const Image& frame, int y, int x0, int x1) {
  double sum = 0.0;
  for (int x = x0; x < x1; ++x) sum += luma(frame, x, y);
  return sum / (x1 - x0);
}

double column_mean(const Image& frame, int x, int y0, int y1) {
  double sum = 0.0;
  for (int y = y0; y < y1; ++y) sum += luma(frame, x, y);
  return sum / (y1 - y0);
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<double>(a.size());
  double ma = 0.0;
  double mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

bool is_flat(std::span<const double> s) {
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  return *hi - *lo <= 1e-9;
}

}  // namespace

CropRect detect_content_rect(const Image& frame, double threshold) {
  if (frame.empty()) throw std::invalid_argument("detect_content_rect: empty frame");
  int top = 0;
  int bottom = frame.height() - 1;
  while (top <= bottom && row_mean(frame, top, 0, frame.width()) < threshold) ++top;
  while (bottom >= top && row_mean(frame, bottom, 0, frame.width()) < threshold) --bottom;
  if (top > bottom) throw AlignmentError("no content above the border threshold");

  int left = 0;
  int right = frame.width() - 1;
  while (left <= right && column_mean(frame, left, top, bottom + 1) < threshold) ++left;
  while (right >= left && column_mean(frame, right, top, bottom + 1) < threshold) --right;
  if (left > right) throw AlignmentError("no content above the border threshold");

  const CropRect rect{left, top, right - left + 1, bottom - top + 1};
  if (rect.width < kMinCropSide || rect.height < kMinCropSide) {
    throw AlignmentError("content rectangle " + std::to_string(rect.width) + "x" + std::to_string(rect.height) +
                         " is smaller than the 16x16 minimum");
  }
  return rect;
}

Image crop_and_stretch(const Image& frame, const CropRect& rect, int out_width, int out_height) {
  if (rect.left < 0 || rect.top < 0 || rect.width < 1 || rect.height < 1 ||
      rect.left + rect.width > frame.width() || rect.top + rect.height > frame.height()) {
    throw std::invalid_argument("crop_and_stretch: rectangle outside the frame");
  }
  if (out_width < 1 || out_height < 1) throw std::invalid_argument("crop_and_stretch: empty output");

  Image out(out_width, out_height, frame.channels());
  const double sx = static_cast<double>(rect.width) / out_width;
  const double sy = static_cast<double>(rect.height) / out_height;
  for (int y = 0; y < out_height; ++y) {
    const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, rect.height - 1.0);
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, rect.height - 1);
    const double wy = fy - y0;
    for (int x = 0; x < out_width; ++x) {
      const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, rect.width - 1.0);
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, rect.width - 1);
      const double wx = fx - x0;
      for (int c = 0; c < frame.channels(); ++c) {
        const double p00 = frame.at(rect.left + x0, rect.top + y0, c);
        const double p10 = frame.at(rect.left + x1, rect.top + y0, c);
        const double p01 = frame.at(rect.left + x0, rect.top + y1, c);
        const double p11 = frame.at(rect.left + x1, rect.top + y1, c);
        const double top = p00 + wx * (p10 - p00);
        const double bottom = p01 + wx * (p11 - p01);
        out.at(x, y, c) = to_byte(top + wy * (bottom - top));
      }
    }
  }
  return out;
}

std::vector<double> difference_signature(std::span<const Image> frames) {
  std::vector<double> sig;
  if (frames.size() < 2) return sig;
  sig.reserve(frames.size() - 1);
  for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
    const Image& a = frames[t];
    const Image& b = frames[t + 1];
    if (a.width() != b.width() || a.height() != b.height()) {
      throw std::invalid_argument("difference_signature: frames differ in size");
    }
    double sum = 0.0;
    for (int y = 0; y < a.height(); ++y) {
      for (int x = 0; x < a.width(); ++x) sum += std::abs(luma(b, x, y) - luma(a, x, y));
    }
    sig.push_back(sum / static_cast<double>(a.pixel_count()));
  }
  return sig;
}

OffsetEstimate signature_offset(std::span<const double> lq, std::span<const double> ref, int window) {
  if (window < 0) throw std::invalid_argument("temporal_offset: window must be >= 0");
  if (lq.size() < 2 || ref.size() < 2) throw std::invalid_argument("temporal_offset: signatures too short");
  if (is_flat(lq) || is_flat(ref)) {
    throw AlignmentError("flat grayscale-difference signature (static video); offset is unreliable");
  }

  OffsetEstimate best;
  bool found = false;
  // 0, -1, +1, -2, +2, ... so strict improvement keeps the smaller |offset| on ties.
  for (int step = 0; step <= 2 * window; ++step) {
    const int o = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
    const int first = std::max(0, -o);
    const int last = std::min(static_cast<int>(ref.size()), static_cast<int>(lq.size()) - o);
    if (last - first < 3) continue;
    const auto n = static_cast<std::size_t>(last - first);
    const double r = pearson(lq.subspan(static_cast<std::size_t>(first + o), n),
                             ref.subspan(static_cast<std::size_t>(first), n));
    if (!found || r > best.correlation + 1e-12) {
      best.offset = o;
      best.correlation = r;
      found = true;
    }
  }
  if (!found) throw AlignmentError("no offset in the window leaves enough overlap");
  best.residual = std::sqrt(2.0 * (1.0 - std::clamp(best.correlation, -1.0, 1.0)));
  best.low_confidence = best.residual > kResidualFlag;
  return best;
}

OffsetEstimate temporal_offset(std::span<const Image> lq, std::span<const Image> ref, int window) {
  if (window < 0) throw std::invalid_argument("temporal_offset: window must be >= 0");
  const auto need = static_cast<std::size_t>(window) + 2;
  if (lq.size() < need || ref.size() < need) {
    throw std::invalid_argument("temporal_offset: sequences need at least window + 2 frames");
  }
  const std::vector<double> s_lq = difference_signature(lq);
  const std::vector<double> s_ref = difference_signature(ref);
  return signature_offset(s_lq, s_ref, window);
}

std::vector<Lab> lab_transfer(std::span<const Lab> src, const LabStats& src_stats, const LabStats& ref_stats) {
  for (int c = 0; c < 3; ++c) {
    if (!std::isfinite(ref_stats.stddev[c]) || ref_stats.stddev[c] < 0.0 || !std::isfinite(ref_stats.mean[c])) {
      throw std::invalid_argument("lab_transfer: reference statistics must be finite with nonnegative spread");
    }
  }
  std::array<double, 3> gain{};
  for (int c = 0; c < 3; ++c) {
    gain[c] = src_stats.stddev[c] > 1e-9 ? ref_stats.stddev[c] / src_stats.stddev[c] : 0.0;
  }
  std::vector<Lab> out;
  out.reserve(src.size());
  for (const Lab& p : src) {
    out.push_back({(p.l - src_stats.mean[0]) * gain[0] + ref_stats.mean[0],
                   (p.a - src_stats.mean[1]) * gain[1] + ref_stats.mean[1],
                   (p.b - src_stats.mean[2]) * gain[2] + ref_stats.mean[2]});
  }
  return out;
}

Image lab_color_transfer(const Image& src, const LabStats& src_stats, const LabStats& ref_stats) {
  const std::vector<Lab> lab = lab_transfer(to_lab(src), src_stats, ref_stats);
  Image out(src.width(), src.height(), 3);
  std::size_t i = 0;
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x, ++i) {
      const auto rgb = lab_to_srgb(lab[i]);
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = to_byte(rgb[static_cast<std::size_t>(c)]);
      }
    }
  }
  return out;
}

Image lab_color_transfer(const Image& src, const LabStats& ref_stats) {
  return lab_color_transfer(src, lab_stats(src), ref_stats);
}

AlignedClip align_clip(std::span<const Image> captured, std::span<const Image> reference,
                       const AlignOptions& options) {
  if (captured.empty() || reference.empty()) throw std::invalid_argument("align_clip: empty clip");
  const int ref_w = reference.front().width();
  const int ref_h = reference.front().height();

  // Border detection on the temporal mean is robust to dark content frames.
  const Image& first = captured.front();
  std::vector<double> acc(first.bytes().size(), 0.0);
  for (const Image& frame : captured) {
    if (!frame.same_shape(first)) throw std::invalid_argument("align_clip: captured frames differ in shape");
    auto bytes = frame.bytes();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += bytes[i];
  }
  Image mean_frame(first.width(), first.height(), first.channels());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    mean_frame.bytes()[i] = to_byte(acc[i] / static_cast<double>(captured.size()));
  }

  AlignedClip result;
  result.report.crop = detect_content_rect(mean_frame, options.border_threshold);

  std::vector<Image> stretched;
  stretched.reserve(captured.size());
  for (const Image& frame : captured) stretched.push_back(crop_and_stretch(frame, result.report.crop, ref_w, ref_h));

  const OffsetEstimate est = temporal_offset(stretched, reference, options.window);
  result.report.temporal_offset = est.offset;
  result.report.correlation = est.correlation;
  result.report.residual = est.residual;
  result.report.low_confidence = est.low_confidence;

  const int first_ref = std::max(0, -est.offset);
  const int last_ref = std::min(static_cast<int>(reference.size()), static_cast<int>(stretched.size()) - est.offset);
  result.first_reference_frame = first_ref;
  std::vector<Image> matched;
  for (int t = first_ref; t < last_ref; ++t) matched.push_back(stretched[static_cast<std::size_t>(t + est.offset)]);
  const auto ref_span = reference.subspan(static_cast<std::size_t>(first_ref), matched.size());

  result.report.source = lab_stats(matched);
  result.report.reference = lab_stats(ref_span);
  for (std::size_t i = 0; i < matched.size(); ++i) {
    if (options.per_frame_color) {
      result.frames.push_back(lab_color_transfer(matched[i], lab_stats(ref_span[i])));
    } else {
      result.frames.push_back(lab_color_transfer(matched[i], result.report.source, result.report.reference));
    }
  }
  return result;
}

}  // namespace flicker
