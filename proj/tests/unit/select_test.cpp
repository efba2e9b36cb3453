#include <gtest/gtest.h>

#include "rdls/imageio.hpp"
#include "rdls/select.hpp"
#include "rdls/synth.hpp"
#include "test_util.hpp"

namespace rdls {
namespace {

ColorImage constant_image(int r, int g, int b) {
  return ColorImage::rgb(Plane::filled(8, 8, kPrimaryBounds, r),
                         Plane::filled(8, 8, kPrimaryBounds, g),
                         Plane::filled(8, 8, kPrimaryBounds, b));
}

TEST(SelectTest, ConstantImageTiesGoToUntransformed) {
  for (Metric m : {Metric::h0, Metric::h0_pavg, Metric::h0_pmed}) {
    const Selection sel = select_transform(constant_image(200, 150, 100), m);
    EXPECT_EQ(sel.dg.chosen.mode, SlotMode::untransformed);
    EXPECT_EQ(sel.db.chosen.mode, SlotMode::untransformed);
    EXPECT_EQ(sel.descriptor(), TransformDescriptor::identity());
  }
}

TEST(SelectTest, EqualGreenAndBluePicksRdgdbForDb) {
  testing::Rng rng(1);
  const Plane r = testing::random_plane(rng, 16, 16, kPrimaryBounds);
  const Plane g = testing::random_plane(rng, 16, 16, kPrimaryBounds);
  const Selection sel = select_transform(ColorImage::rgb(r, g, g), Metric::h0_pmed);
  EXPECT_EQ(sel.db.chosen.mode, SlotMode::difference);
  EXPECT_EQ(sel.db.value, 0.0);
}

TEST(SelectTest, NoisySyntheticPicksRdls) {
  const ColorImage img = add_awgn(synthetic_scene(128, 128, 31), 5, 5, 5, 5);
  const Selection sel = select_transform(img, Metric::h0_pmed);
  EXPECT_EQ(sel.dg.chosen.mode, SlotMode::denoised_difference);
  EXPECT_EQ(sel.db.chosen.mode, SlotMode::denoised_difference);
  const EstimateReport rep = estimate_options(img);
  EXPECT_LT(percent_delta(sel.dg.value, rep.find(Slot::dg, {SlotMode::difference, 0}).h0_pmed), 0.0);
}

TEST(SelectTest, TieBreakPrefersLargerWeight) {
  EstimateReport rep;
  for (const SlotOption& o : all_slot_options()) {
    OptionEstimate e;
    e.option = o;
    e.h0 = o.mode == SlotMode::denoised_difference ? 1.0 : 2.0;
    rep.dg.push_back(e);
    rep.db.push_back(e);
  }
  const Selection sel = select_from_report(rep, Metric::h0);
  EXPECT_EQ(sel.dg.chosen, (SlotOption{SlotMode::denoised_difference, 1024}));
  EXPECT_EQ(sel.dg.ranked.front().option.weight, 1024);
  EXPECT_EQ(sel.dg.ranked[10].option.weight, 1);
  EXPECT_EQ(sel.dg.ranked[11].option.mode, SlotMode::untransformed);
}

TEST(SelectTest, ChoiceIsArgminOfReport) {
  testing::Rng rng(2);
  for (int trial = 0; trial < 6; ++trial) {
    const ColorImage img = testing::random_smooth_rgb(rng, 32, 24, 4 + 6 * trial);
    const EstimateReport rep = estimate_options(img);
    for (Metric m : {Metric::h0, Metric::h0_pavg, Metric::h0_pmed}) {
      const Selection sel = select_from_report(rep, m);
      for (const auto& e : rep.dg) EXPECT_LE(sel.dg.value, e.value(m));
      for (const auto& e : rep.db) EXPECT_LE(sel.db.value, e.value(m));
      EXPECT_EQ(sel.dg.value, rep.find(Slot::dg, sel.dg.chosen).value(m));
    }
  }
}

TEST(SelectTest, JointModeUsesOneFamily) {
  testing::Rng rng(3);
  const ColorImage img = testing::random_smooth_rgb(rng, 32, 32, 20);
  const EstimateReport rep = estimate_options(img);
  const Selection joint = select_from_report(rep, Metric::h0_pmed, SelectionMode::joint);
  const Selection free = select_from_report(rep, Metric::h0_pmed, SelectionMode::per_slot);
  EXPECT_EQ(joint.dg.chosen.mode, joint.db.chosen.mode);
  EXPECT_LE(free.dg.value + free.db.value, joint.dg.value + joint.db.value);
}

TEST(SelectTest, ApplySelectionRoundTrips) {
  testing::Rng rng(4);
  const ColorImage img = testing::random_smooth_rgb(rng, 20, 20, 15);
  const Selection sel = select_transform(img, Metric::h0_pmed);
  const auto [out, d] = apply_selection(img, sel);
  EXPECT_EQ(out.roles(), d.output_roles());
  EXPECT_EQ(inverse_transform(out, d), img);
}

}  // namespace
}  // namespace rdls
