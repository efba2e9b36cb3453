#include <gtest/gtest.h>

#include "rdls/codec.hpp"
#include "rdls/compress.hpp"
#include "rdls/synth.hpp"
#include "test_util.hpp"

namespace rdls {
namespace {

TEST(ZigzagTest, SmallValues) {
  using namespace codec_detail;
  EXPECT_EQ(zigzag(0), 0u);
  EXPECT_EQ(zigzag(-1), 1u);
  EXPECT_EQ(zigzag(1), 2u);
  EXPECT_EQ(zigzag(-2), 3u);
  for (int r = -1022; r <= 1022; ++r) ASSERT_EQ(unzigzag(zigzag(r)), r);
}

TEST(CodecTest, RoundTripRandomPlanes) {
  testing::Rng rng(1);
  const Bounds bounds[] = {kPrimaryBounds, kChromaBounds, kWorkingBounds, Bounds{-3, 4}, Bounds{5, 5}};
  for (int trial = 0; trial < 100; ++trial) {
    const Bounds b = bounds[trial % 5];
    const Plane p = testing::random_plane(rng, rng.uniform(1, 40), rng.uniform(1, 40), b);
    const auto bytes = encode_plane_bytes(p);
    ASSERT_EQ(decode_plane_bytes(bytes), p);
  }
}

TEST(CodecTest, RoundTripSmoothAndExtremePlanes) {
  testing::Rng rng(2);
  const ColorImage img = testing::random_smooth_rgb(rng, 64, 48, 3);
  for (const Plane& p : img.planes()) EXPECT_EQ(decode_plane_bytes(encode_plane_bytes(p)), p);
  // Alternating extremes force the escape path.
  std::vector<Sample> s(64 * 4);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = (i * 7 + i / 64) % 2 ? 511 : -511;
  const Plane e = Plane::make(64, 4, kWorkingBounds, s);
  EXPECT_EQ(decode_plane_bytes(encode_plane_bytes(e)), e);
}

TEST(CodecTest, ConstantPlaneBelowTenthBit) {
  for (int v : {0, 77, 255}) {
    const Plane p = Plane::filled(256, 256, kPrimaryBounds, v);
    EXPECT_LT(measure_bitrate(p), 0.1) << v;
  }
}

TEST(CodecTest, RandomPlaneAtLeastEightBits) {
  testing::Rng rng(3);
  const Plane p = testing::random_plane(rng, 256, 256, kPrimaryBounds);
  EXPECT_GE(measure_bitrate(p), 8.0);
}

TEST(CodecTest, SmoothPlaneCompresses) {
  const ColorImage img = synthetic_scene(128, 128, 4);
  EXPECT_LT(measure_bitrate(img.plane(1)), 5.0);
}

TEST(CodecTest, BitrateCountsWholeStream) {
  EXPECT_DOUBLE_EQ(bitrate(16, 1000), 0.128);
  const Plane p = Plane::filled(40, 25, kPrimaryBounds, 9);
  EXPECT_DOUBLE_EQ(measure_bitrate(p), 8.0 * encode_plane_bytes(p).size() / 1000.0);
}

TEST(CodecTest, NoiseDoesNotLowerBitrate) {
  const ColorImage base = synthetic_scene(96, 96, 12);
  double clean = 0, noisy = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    clean += measure_bitrate(base.plane(1));
    noisy += measure_bitrate(add_awgn(base, 5, 5, 5, seed).plane(1));
  }
  EXPECT_GE(noisy, clean);
}

TEST(CodecTest, Deterministic) {
  testing::Rng rng(13);
  const Plane p = testing::random_plane(rng, 31, 17, kChromaBounds);
  EXPECT_EQ(encode_plane_bytes(p), encode_plane_bytes(p));
}

TEST(CodecTest, HeaderLayout) {
  const auto bytes = encode_plane_bytes(make_plane(3, 2, -5, 9, {1, 2, 3, 4, 5, 6}));
  ASSERT_GE(bytes.size(), kCodedHeaderSize);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "RDLC");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 3);
  EXPECT_EQ(bytes[9], 2);
  EXPECT_EQ(static_cast<std::int16_t>(bytes[13] | (bytes[14] << 8)), -5);
  EXPECT_EQ(bytes[15], 9);
}

TEST(CodecTest, EveryBitFlipIsDetected) {
  testing::Rng rng(4);
  const Plane p = testing::random_plane(rng, 9, 7, Bounds{-40, 40});
  const auto bytes = encode_plane_bytes(p);
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    for (int bit = 0; bit < 8; ++bit) {
      auto bad = bytes;
      bad[i] ^= static_cast<std::uint8_t>(1u << bit);
      EXPECT_THROW(decode_plane_bytes(bad), Error) << "byte " << i << " bit " << bit;
    }
  }
}

TEST(CodecTest, TruncationAndTrailingBytes) {
  testing::Rng rng(5);
  const auto bytes = encode_plane_bytes(testing::random_plane(rng, 12, 12, kPrimaryBounds));
  for (std::size_t n = 0; n < bytes.size(); ++n) {
    EXPECT_THROW(decode_plane_bytes(std::span(bytes.data(), n)), Error) << n;
  }
  auto longer = bytes;
  longer.push_back(0);
  EXPECT_THROW(decode_plane_bytes(longer), DecodeError);
}

TEST(CodecTest, ErrorsCarryByteOffsets) {
  auto bytes = encode_plane_bytes(Plane::filled(4, 4, kPrimaryBounds, 1));
  bytes[0] = 'X';
  try {
    decode_plane_bytes(bytes, 100);
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 100u);
    EXPECT_NE(std::string(e.what()).find("corrupt data at byte 100"), std::string::npos);
  }
}

TEST(CompressTest, RoundTripAllKinds) {
  const ColorImage img = synthetic_scene(48, 40, 6);
  for (const auto& d :
       {TransformDescriptor::identity(), TransformDescriptor::rdgdb(), TransformDescriptor::rct(),
        TransformDescriptor::rdls_rdgdb(FilterSpec(2), FilterSpec(128)),
        TransformDescriptor::per_slot(SlotTransform::difference(), SlotTransform::none())}) {
    const CompressResult c = compress_image(img, d);
    ASSERT_EQ(decompress_image(c.bytes), img) << d.describe();
    EXPECT_GT(c.total_bpp(), 0.0);
  }
}

TEST(CompressTest, AutoSelectionRoundTrip) {
  testing::Rng rng(7);
  const ColorImage img = testing::random_smooth_rgb(rng, 33, 21, 9);
  const CompressResult c = compress_auto(img);
  ASSERT_TRUE(c.selection.has_value());
  EXPECT_EQ(c.descriptor, c.selection->descriptor());
  EXPECT_EQ(decompress_image(c.bytes), img);
}

TEST(CompressTest, CorruptionDetected) {
  const ColorImage img = synthetic_scene(16, 16, 8);
  const auto bytes = compress_image(img, TransformDescriptor::rdls_rdgdb(FilterSpec(4), FilterSpec(4))).bytes;
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    auto bad = bytes;
    bad[i] ^= 0x10;
    EXPECT_THROW(decompress_image(bad), Error) << i;
  }
  auto longer = bytes;
  longer.push_back(1);
  EXPECT_THROW(decompress_image(longer), Error);
}

}  // namespace
}  // namespace rdls
