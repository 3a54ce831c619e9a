#include <gtest/gtest.h>

#include <cmath>

#include "flicker/align.hpp"
#include "flicker/color.hpp"
#include "support.hpp"

namespace flicker {
namespace {

using testing::constant_image;
using testing::textured_frame;

Image letterbox(const Image& content, int left, int top, int right, int bottom, std::uint8_t border = 0) {
  Image out(content.width() + left + right, content.height() + top + bottom, content.channels(), border);
  for (int y = 0; y < content.height(); ++y) {
    for (int x = 0; x < content.width(); ++x) {
      for (int c = 0; c < content.channels(); ++c) out.at(x + left, y + top, c) = content.at(x, y, c);
    }
  }
  return out;
}

TEST(DetectContentRect, FindsInsetContent) {
  const Image frame = letterbox(textured_frame(640, 360, 0, 1), 40, 40, 40, 40);
  EXPECT_EQ(detect_content_rect(frame), (CropRect{40, 40, 640, 360}));
}

TEST(DetectContentRect, AsymmetricBordersAndNoBorder) {
  const Image content = textured_frame(100, 60, 0, 2);
  EXPECT_EQ(detect_content_rect(letterbox(content, 3, 0, 11, 7)), (CropRect{3, 0, 100, 60}));
  EXPECT_EQ(detect_content_rect(content), (CropRect{0, 0, 100, 60}));
}

TEST(DetectContentRect, DoesNotDependOnContentTexture) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Image frame = letterbox(textured_frame(80, 50, static_cast<int>(seed), seed), 5, 9, 2, 4);
    EXPECT_EQ(detect_content_rect(frame), (CropRect{5, 9, 80, 50}));
  }
}

TEST(DetectContentRect, FailsOnBlackOrTinyContent) {
  EXPECT_THROW(detect_content_rect(constant_image(64, 64, 0)), AlignmentError);
  EXPECT_THROW(detect_content_rect(letterbox(constant_image(15, 40, 200), 10, 10, 10, 10)), AlignmentError);
  EXPECT_NO_THROW(detect_content_rect(letterbox(constant_image(16, 16, 200), 10, 10, 10, 10)));
}

TEST(CropAndStretch, FullRectAtSameSizeIsIdentity) {
  const Image frame = textured_frame(37, 23, 0, 3);
  EXPECT_EQ(crop_and_stretch(frame, {0, 0, 37, 23}, 37, 23), frame);
  EXPECT_THROW(crop_and_stretch(frame, {30, 0, 10, 23}, 10, 10), std::invalid_argument);
}

TEST(CropAndStretch, UpscalesConstantRegionsExactly) {
  const Image frame = letterbox(constant_image(10, 10, 77), 4, 4, 4, 4);
  const Image out = crop_and_stretch(frame, {4, 4, 10, 10}, 33, 21);
  for (std::uint8_t b : out.bytes()) ASSERT_EQ(b, 77);
}

// Reference frames r_0..r_{n-1}; the capture shows r_t at index t + offset
// and unrelated frames elsewhere.
void planted_pair(int n, int offset, std::uint64_t seed, std::vector<Image>& lq, std::vector<Image>& ref) {
  ref.clear();
  lq.clear();
  for (int t = 0; t < n; ++t) ref.push_back(textured_frame(24, 16, t, seed));
  for (int i = 0; i < n; ++i) {
    const int t = i - offset;
    lq.push_back(t >= 0 && t < n ? ref[t] : textured_frame(24, 16, 1000 + i, seed ^ 0xABCDEF));
  }
}

TEST(TemporalOffset, RecoversPlantedOffsets) {
  std::vector<Image> lq;
  std::vector<Image> ref;
  for (int offset : {-15, -7, 0, 7, 15}) {
    planted_pair(60, offset, 4 + offset, lq, ref);
    const OffsetEstimate est = temporal_offset(lq, ref, 15);
    EXPECT_EQ(est.offset, offset);
    EXPECT_NEAR(est.correlation, 1.0, 1e-9);
    EXPECT_FALSE(est.low_confidence);
  }
}

TEST(TemporalOffset, IsAntisymmetric) {
  CounterRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(50);
    for (double& v : a) v = rng.uniform();
    const int offset = static_cast<int>(rng.uniform_int(-10, 10));
    std::vector<double> b(50);
    for (int i = 0; i < 50; ++i) {
      const int j = i + offset;
      b[i] = (j >= 0 && j < 50) ? a[j] : rng.uniform();
    }
    // a[i + offset] == b[i]: a is the capture of b at +offset.
    EXPECT_EQ(signature_offset(a, b, 12).offset, offset);
    EXPECT_EQ(signature_offset(b, a, 12).offset, -offset);
  }
}

TEST(TemporalOffset, UnrelatedSignaturesAreFlagged) {
  CounterRng rng(6);
  int flagged = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(60);
    std::vector<double> b(60);
    for (double& v : a) v = rng.uniform();
    for (double& v : b) v = rng.uniform();
    flagged += signature_offset(a, b, 5).low_confidence ? 1 : 0;
  }
  EXPECT_EQ(flagged, 20);
}

TEST(TemporalOffset, RejectsShortOrStaticInput) {
  std::vector<Image> few(5, constant_image(8, 8, 1));
  EXPECT_THROW(temporal_offset(few, few, 15), std::invalid_argument);
  std::vector<Image> still(20, constant_image(8, 8, 100));
  EXPECT_THROW(temporal_offset(still, still, 3), AlignmentError);
}

TEST(Lab, WhiteAndRoundTrip) {
  const Lab white = srgb_to_lab(255, 255, 255);
  EXPECT_NEAR(white.l, 100.0, 1e-4);
  EXPECT_NEAR(white.a, 0.0, 1e-4);
  EXPECT_NEAR(white.b, 0.0, 1e-4);
  CounterRng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double r = rng.uniform(0, 255);
    const double g = rng.uniform(0, 255);
    const double b = rng.uniform(0, 255);
    const auto back = lab_to_srgb(srgb_to_lab(r, g, b));
    ASSERT_NEAR(back[0], r, 1e-9);
    ASSERT_NEAR(back[1], g, 1e-9);
    ASSERT_NEAR(back[2], b, 1e-9);
  }
}

TEST(LabTransfer, OwnStatisticsIsIdentityWithinOneCode) {
  const Image src = textured_frame(40, 30, 0, 8);
  const Image out = lab_color_transfer(src, lab_stats(src));
  for (std::size_t i = 0; i < src.bytes().size(); ++i) {
    ASSERT_LE(std::abs(int(out.bytes()[i]) - int(src.bytes()[i])), 1);
  }
}

TEST(LabTransfer, MatchesReferenceStatisticsBeforeQuantization) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Image src = textured_frame(40, 30, 0, seed);
    const Image ref = textured_frame(40, 30, 5, seed + 100);
    const LabStats want = lab_stats(ref);
    const std::vector<Lab> lab = to_lab(src);
    const LabStats got = lab_stats(lab_transfer(lab, lab_stats(lab), want));
    for (int c = 0; c < 3; ++c) {
      EXPECT_NEAR(got.mean[c], want.mean[c], 1e-3);
      EXPECT_NEAR(got.stddev[c], want.stddev[c], 1e-3);
    }
  }
}

TEST(LabTransfer, FlatSourceCollapsesToReferenceMean) {
  const std::vector<Lab> flat(50, Lab{40, 5, -3});
  LabStats ref;
  ref.mean = {60, -2, 8};
  ref.stddev = {10, 4, 2};
  for (const Lab& p : lab_transfer(flat, lab_stats(flat), ref)) {
    EXPECT_EQ(p.l, 60);
    EXPECT_EQ(p.a, -2);
    EXPECT_EQ(p.b, 8);
  }
}

TEST(LabTransfer, IsIdempotent) {
  const Image src = textured_frame(30, 20, 0, 9);
  const LabStats ref = lab_stats(textured_frame(30, 20, 1, 10));
  const std::vector<Lab> lab = to_lab(src);
  const std::vector<Lab> once = lab_transfer(lab, lab_stats(lab), ref);
  const std::vector<Lab> twice = lab_transfer(once, lab_stats(once), ref);
  for (std::size_t i = 0; i < once.size(); ++i) {
    ASSERT_NEAR(twice[i].l, once[i].l, 1e-9);
    ASSERT_NEAR(twice[i].a, once[i].a, 1e-9);
    ASSERT_NEAR(twice[i].b, once[i].b, 1e-9);
  }
}

TEST(LabTransfer, RejectsInvalidReferenceSpread) {
  const std::vector<Lab> px(4, Lab{});
  LabStats ref;
  ref.stddev = {1, -1, 1};
  EXPECT_THROW(lab_transfer(px, lab_stats(px), ref), std::invalid_argument);
  ref.stddev = {1, NAN, 1};
  EXPECT_THROW(lab_transfer(px, lab_stats(px), ref), std::invalid_argument);
}

TEST(AlignClip, RecoversCropOffsetAndColor) {
  std::vector<Image> lq;
  std::vector<Image> ref;
  planted_pair(40, 6, 11, lq, ref);
  std::vector<Image> captured;
  for (const Image& f : lq) captured.push_back(letterbox(f, 8, 4, 8, 4));
  const AlignedClip aligned = align_clip(captured, ref, AlignOptions{});
  EXPECT_EQ(aligned.report.crop, (CropRect{8, 4, 24, 16}));
  EXPECT_EQ(aligned.report.temporal_offset, 6);
  EXPECT_EQ(aligned.first_reference_frame, 0);
  ASSERT_EQ(aligned.frames.size(), 34u);
  for (std::size_t i = 0; i < aligned.frames.size(); ++i) {
    for (std::size_t b = 0; b < ref[i].bytes().size(); ++b) {
      ASSERT_LE(std::abs(int(aligned.frames[i].bytes()[b]) - int(ref[i].bytes()[b])), 1);
    }
  }
}

}  // namespace
}  // namespace flicker
