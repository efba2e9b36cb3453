#include <gtest/gtest.h>

#include "rdls/core.hpp"
#include "rdls/descriptor.hpp"
#include "rdls/filter_spec.hpp"
#include "test_util.hpp"

namespace rdls {
namespace {

TEST(PlaneTest, MinimalPlane) {
  const Plane p = make_plane(1, 1, 0, 255, {7});
  EXPECT_EQ(p.width(), 1);
  EXPECT_EQ(p.height(), 1);
  EXPECT_EQ(p.at(0, 0), 7);
}

TEST(PlaneTest, BoundsEndpointsAccepted) {
  const Plane p = make_plane(2, 2, 0, 255, {0, 255, 128, 64});
  EXPECT_EQ(p.at(1, 0), 255);
  EXPECT_EQ(p.at(0, 1), 128);
}

TEST(PlaneTest, SampleOutOfBoundsReportsIndexAndValue) {
  try {
    make_plane(2, 2, 0, 255, {-1, 0, 0, 0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("sample out of bounds"), std::string::npos) << msg;
    EXPECT_NE(msg.find("index 0"), std::string::npos) << msg;
    EXPECT_NE(msg.find("-1"), std::string::npos) << msg;
  }
}

TEST(PlaneTest, DimensionMismatch) {
  EXPECT_THROW(make_plane(2, 2, 0, 255, {1, 2, 3}), Error);
  EXPECT_THROW(make_plane(0, 2, 0, 255, {}), Error);
}

TEST(PlaneTest, ConstructionRejectsEveryViolation) {
  testing::Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int w = rng.uniform(1, 6), h = rng.uniform(1, 6);
    const Bounds b{rng.uniform(-300, 0), rng.uniform(1, 300)};
    std::vector<Sample> s(static_cast<std::size_t>(w) * h);
    bool violated = false;
    for (auto& v : s) {
      v = rng.uniform(b.min - 3, b.max + 3);
      violated = violated || !b.contains(v);
    }
    if (violated) {
      EXPECT_THROW(Plane::make(w, h, b, s), Error);
    } else {
      EXPECT_NO_THROW(Plane::make(w, h, b, s));
    }
  }
}

TEST(PlaneEqualTest, EquivalenceAndDifferences) {
  const Plane p = make_plane(2, 2, 0, 255, {1, 2, 3, 4});
  const Plane q = make_plane(2, 2, 0, 255, {1, 2, 3, 4});
  EXPECT_TRUE(plane_equal(p, p));
  EXPECT_TRUE(plane_equal(p, q) && plane_equal(q, p));
  EXPECT_FALSE(plane_equal(p, make_plane(2, 2, 0, 255, {1, 2, 3, 5})));
  EXPECT_FALSE(plane_equal(make_plane(1, 1, 0, 255, {1}), make_plane(2, 1, 0, 255, {1, 1})));
  EXPECT_FALSE(plane_equal(p, p.with_bounds(kChromaBounds)));
}

TEST(ColorImageTest, RolesAndDimensions) {
  const Plane a = Plane::filled(2, 2, kPrimaryBounds, 1);
  const Plane c = Plane::filled(2, 2, kChromaBounds, 0);
  EXPECT_NO_THROW(ColorImage({a, a, a}, kRgbRoles));
  EXPECT_NO_THROW(ColorImage({a, c, c}, kRdlsRoles));
  EXPECT_NO_THROW(ColorImage({a, a, c}, Roles{Role::R, Role::G, Role::Db}));
  EXPECT_THROW(ColorImage({a, a, a}, Roles{Role::G, Role::R, Role::B}), Error);
  EXPECT_THROW(ColorImage({a, c, c}, Roles{Role::R, Role::Db, Role::Dg}), Error);
  // A chroma-range plane cannot carry a primary role.
  EXPECT_THROW(ColorImage({a, c, a}, kRgbRoles), Error);
  EXPECT_THROW(ColorImage({a, Plane::filled(1, 2, kPrimaryBounds, 1), a}, kRgbRoles), Error);
}

TEST(RoundingTest, RoundDivTiesAwayFromZero) {
  EXPECT_EQ(round_div(5, 2), 3);
  EXPECT_EQ(round_div(-5, 2), -3);
  EXPECT_EQ(round_div(100, 9), 11);
  EXPECT_EQ(round_div(-100, 9), -11);
  EXPECT_EQ(round_div(41, 2), 21);
  EXPECT_EQ(round_div(0, 7), 0);
  for (int num = -300; num <= 300; ++num) {
    for (int den = 1; den <= 20; ++den) {
      EXPECT_EQ(round_div(num, den), static_cast<std::int64_t>(std::round(double(num) / den)));
      EXPECT_EQ(floor_div(num, den), static_cast<std::int64_t>(std::floor(double(num) / den)));
    }
  }
}

TEST(FilterSpecTest, PowersOfTwoOnly) {
  for (int k = 0; k <= 10; ++k) EXPECT_EQ(FilterSpec(1 << k).exponent(), k);
  EXPECT_THROW(FilterSpec(0), Error);
  EXPECT_THROW(FilterSpec(3), Error);
  EXPECT_THROW(FilterSpec(2048), Error);
  EXPECT_THROW(FilterSpec::from_exponent(11), Error);
  EXPECT_EQ(all_filter_specs().back().weight(), 1024);
}

TEST(DescriptorTest, PerSlotNormalizesToNamedKinds) {
  EXPECT_EQ(TransformDescriptor::per_slot(SlotTransform::none(), SlotTransform::none()).kind(),
            TransformKind::identity);
  EXPECT_EQ(TransformDescriptor::per_slot(SlotTransform::difference(),
                                          SlotTransform::difference()).kind(),
            TransformKind::rdgdb);
  const auto rdls = TransformDescriptor::per_slot(SlotTransform::denoised(FilterSpec(16)),
                                                  SlotTransform::denoised(FilterSpec(1)));
  EXPECT_EQ(rdls, TransformDescriptor::rdls_rdgdb(FilterSpec(1), FilterSpec(16)));
  const auto mixed = TransformDescriptor::per_slot(SlotTransform::denoised(FilterSpec(4)),
                                                   SlotTransform::difference());
  EXPECT_EQ(mixed.kind(), TransformKind::per_slot);
  EXPECT_EQ(mixed.output_roles(), (Roles{Role::R, Role::dDg, Role::Db}));
  EXPECT_EQ(TransformDescriptor::rct().output_roles(), kRctRoles);
}

}  // namespace
}  // namespace rdls
