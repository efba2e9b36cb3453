#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "rdls/imageio.hpp"
#include "rdls/transforms.hpp"
#include "test_util.hpp"

namespace rdls {
namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

TEST(PpmTest, RoundTrip) {
  testing::Rng rng(1);
  const ColorImage img = testing::random_rgb(rng, 7, 5);
  EXPECT_EQ(decode_ppm(encode_ppm(img)), img);
}

TEST(PpmTest, SinglePixelAndByteExactRewrite) {
  auto data = bytes_of("P6\n1 1\n255\n");
  data.insert(data.end(), {1, 2, 3});
  const ColorImage img = decode_ppm(data);
  EXPECT_EQ(img.plane(0), make_plane(1, 1, 0, 255, {1}));
  EXPECT_EQ(img.plane(1), make_plane(1, 1, 0, 255, {2}));
  EXPECT_EQ(img.plane(2), make_plane(1, 1, 0, 255, {3}));
  EXPECT_EQ(encode_ppm(img), data);
}

TEST(PpmTest, HeaderWithComments) {
  auto data = bytes_of("P6\n# made by hand\n2 1\n# depth\n255\n");
  for (int v : {1, 2, 3, 4, 5, 6}) data.push_back(static_cast<std::uint8_t>(v));
  const ColorImage img = decode_ppm(data);
  EXPECT_EQ(img.width(), 2);
  EXPECT_EQ(img.plane(2).at(1, 0), 6);
  EXPECT_EQ(img.plane(0).at(1, 0), 4);
}

TEST(PpmTest, RejectsBadInput) {
  EXPECT_THROW(decode_ppm(bytes_of("P5\n1 1\n255\nx")), Error);
  EXPECT_THROW(decode_ppm(bytes_of("P6\n1 1\n65535\nxxxxxx")), Error);
  EXPECT_THROW(decode_ppm(bytes_of("P6\n2 2\n255\nabc")), Error);
  EXPECT_THROW(decode_ppm(bytes_of("P6\n0 2\n255\n")), Error);
  EXPECT_THROW(decode_ppm(bytes_of("")), Error);
}

TEST(PpmTest, RejectsTransformedImage) {
  testing::Rng rng(2);
  EXPECT_THROW(encode_ppm(rdgdb_forward(testing::random_rgb(rng, 2, 2))), Error);
}

TEST(PgmTest, RoundTripAndFiles) {
  testing::Rng rng(3);
  const Plane p = testing::random_plane(rng, 6, 4, kPrimaryBounds);
  EXPECT_EQ(decode_pgm(encode_pgm(p)), p);
  const auto path = std::filesystem::temp_directory_path() / "rdls_pgm_test.pgm";
  write_pgm(p, path);
  EXPECT_EQ(read_pgm(path), p);
  std::filesystem::remove(path);
  EXPECT_THROW(read_pgm(path), Error);
}

TEST(PlanarTest, RoundTripEveryKind) {
  testing::Rng rng(4);
  const ColorImage img = testing::random_rgb(rng, 9, 6);
  for (const auto& d :
       {TransformDescriptor::identity(), TransformDescriptor::rdgdb(), TransformDescriptor::rct(),
        TransformDescriptor::rdls_rdgdb(FilterSpec(1024), FilterSpec(1)),
        TransformDescriptor::per_slot(SlotTransform::denoised(FilterSpec(2)), SlotTransform::none())}) {
    const ColorImage t = forward_transform(img, d);
    const auto [back, desc] = decode_planar(encode_planar(t, d));
    EXPECT_EQ(back, t);
    EXPECT_EQ(desc, d);
    EXPECT_EQ(inverse_transform(back, desc), img);
  }
}

TEST(PlanarTest, RejectsCorruptHeaders) {
  testing::Rng rng(5);
  const ColorImage img = testing::random_rgb(rng, 3, 3);
  const auto d = TransformDescriptor::rdls_rdgdb(FilterSpec(8), FilterSpec(8));
  const auto good = encode_planar(forward_transform(img, d), d);
  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_planar(bad_magic), DecodeError);
  auto bad_weight = good;
  bad_weight[7] = 3;  // dg weight low byte
  EXPECT_THROW(decode_planar(bad_weight), DecodeError);
  auto bad_kind = good;
  bad_kind[5] = 9;
  EXPECT_THROW(decode_planar(bad_kind), DecodeError);
  EXPECT_THROW(decode_planar(std::span(good.data(), good.size() - 1)), DecodeError);
  auto longer = good;
  longer.push_back(0);
  EXPECT_THROW(decode_planar(longer), DecodeError);
  EXPECT_THROW(encode_planar(img, d), Error);
}

TEST(PlanarTest, RejectsOutOfBoundsSample) {
  const ColorImage img = ColorImage::rgb(Plane::filled(1, 1, kPrimaryBounds, 0),
                                         Plane::filled(1, 1, kPrimaryBounds, 0),
                                         Plane::filled(1, 1, kPrimaryBounds, 0));
  auto data = encode_planar(img, TransformDescriptor::identity());
  // Last sample is the B value, stored as i16 little-endian.
  data[data.size() - 2] = 0x00;
  data[data.size() - 1] = 0x01;
  EXPECT_THROW(decode_planar(data), Error);
}

TEST(BayerTest, ExactMeanAndConstantPlane) {
  const ColorImage rgb = bayer_rggb_to_rgb(make_plane(2, 2, 0, 255, {10, 20, 30, 40}));
  EXPECT_EQ(rgb.plane(0).at(0, 0), 10);
  EXPECT_EQ(rgb.plane(1).at(0, 0), 25);
  EXPECT_EQ(rgb.plane(2).at(0, 0), 40);
  const ColorImage flat = bayer_rggb_to_rgb(Plane::filled(6, 4, kPrimaryBounds, 77));
  for (const Plane& p : flat.planes()) EXPECT_EQ(p, Plane::filled(3, 2, kPrimaryBounds, 77));
}

TEST(BayerTest, GreenMeanRoundsHalfUp) {
  const Plane m = make_plane(2, 2, 0, 255, {200, 20, 21, 50});
  const ColorImage rgb = bayer_rggb_to_rgb(m);
  EXPECT_EQ(rgb.width(), 1);
  EXPECT_EQ(rgb.plane(0).at(0, 0), 200);
  EXPECT_EQ(rgb.plane(1).at(0, 0), 21);
  EXPECT_EQ(rgb.plane(2).at(0, 0), 50);
  EXPECT_THROW(bayer_rggb_to_rgb(Plane::filled(3, 2, kPrimaryBounds, 0)), Error);
}

TEST(ReduceTest, BlockMean) {
  std::vector<Sample> s(9, 4);
  s[0] = 8;  // sum 40 -> round(40 / 9) = 4
  EXPECT_EQ(reduce3x(Plane::make(3, 3, kPrimaryBounds, s)).at(0, 0), 4);
  const Plane r = reduce3x(make_plane(3, 3, 0, 255, {1, 2, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(r.at(0, 0), 5);
  EXPECT_EQ(reduce3x(Plane::filled(6, 6, kPrimaryBounds, 200)), Plane::filled(2, 2, kPrimaryBounds, 200));
}

TEST(ReduceTest, DropsPartialBlocksAndMatchesOracle) {
  testing::Rng rng(6);
  const Plane p = testing::random_plane(rng, 11, 7, kPrimaryBounds);
  const Plane r = reduce3x(p);
  ASSERT_EQ(r.width(), 3);
  ASSERT_EQ(r.height(), 2);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 3; ++x) {
      double sum = 0;
      for (int dy = 0; dy < 3; ++dy)
        for (int dx = 0; dx < 3; ++dx) sum += p.at(3 * x + dx, 3 * y + dy);
      EXPECT_EQ(r.at(x, y), static_cast<int>(std::round(sum / 9.0)));
    }
  }
  EXPECT_THROW(reduce3x(Plane::filled(2, 9, kPrimaryBounds, 0)), Error);
}

TEST(NoiseTest, StandardDeviationOnConstantPlane) {
  const Plane c = Plane::filled(256, 256, kPrimaryBounds, 128);
  const ColorImage noisy = add_awgn(ColorImage::rgb(c, c, c), 20, 20, 20, 42);
  for (const Plane& p : noisy.planes()) {
    double sum = 0, sq = 0;
    for (Sample s : p.samples()) {
      sum += s - 128;
      sq += double(s - 128) * (s - 128);
    }
    const double n = static_cast<double>(p.size());
    const double sd = std::sqrt(sq / n - (sum / n) * (sum / n));
    EXPECT_GE(sd, 18.5);
    EXPECT_LE(sd, 21.5);
    EXPECT_NEAR(sum / n, 0.0, 0.5);
  }
}

TEST(NoiseTest, SeedDeterminismAndZeroSigma) {
  testing::Rng rng(7);
  const ColorImage img = testing::random_rgb(rng, 16, 16);
  EXPECT_EQ(add_awgn(img, 5, 6, 7, 1), add_awgn(img, 5, 6, 7, 1));
  EXPECT_NE(add_awgn(img, 5, 6, 7, 1), add_awgn(img, 5, 6, 7, 2));
  EXPECT_EQ(add_awgn(img, 0, 0, 0, 3), img);
  EXPECT_THROW(add_awgn(img, -1, 0, 0, 3), Error);
}

TEST(NoiseTest, ClampsToByteRange) {
  const Plane z = Plane::filled(64, 64, kPrimaryBounds, 0);
  const ColorImage noisy = add_awgn(ColorImage::rgb(z, z, z), 80, 80, 80, 9);
  for (const Plane& p : noisy.planes()) {
    for (Sample s : p.samples()) ASSERT_TRUE(s >= 0 && s <= 255);
  }
}

}  // namespace
}  // namespace rdls
