#ifndef RDLS_TRANSFORMS_HPP_
#define RDLS_TRANSFORMS_HPP_

// Concrete color component transforms built on the lifting engine.
//
//   RDgDb:       Db = G - B;        Dg = R - G;        R kept
//   RDLS-RDgDb:  dDb = G^d - B;     dDg = R^d - G;     R kept
//   RCT:         Cu = B - G;  Cv = R - G;  Y = G + floor((Cu + Cv) / 4)
//
// G^d and R^d are the denoised G and R planes. The Db-slot step runs first,
// while G is still untransformed; the inverse runs the steps backwards.

#include <string>

#include "rdls/core.hpp"
#include "rdls/descriptor.hpp"
#include "rdls/lifting.hpp"

namespace rdls {

namespace detail {

inline Mixer take_first() {
  return [](Sample a, Sample) { return std::int64_t{a}; };
}
inline Mixer take_second() {
  return [](Sample, Sample b) { return std::int64_t{b}; };
}

// Step acting on one chrominance slot of the RDgDb family: the target plane
// becomes (source or denoised source) - target.
inline LiftStep slot_step(std::size_t target, const SlotTransform& slot,
                          Role plain, Role diff, Role denoised) {
  LiftStep step;
  step.target = target;
  step.role_before = plain;
  step.bounds_before = kPrimaryBounds;
  switch (slot.mode()) {
    case SlotMode::untransformed:
      step.combine = Combine::keep;
      step.role_after = plain;
      step.bounds_after = kPrimaryBounds;
      return step;
    case SlotMode::difference:
      step.role_after = diff;
      break;
    case SlotMode::denoised_difference:
      step.role_after = denoised;
      break;
  }
  step.combine = Combine::negated_sum;
  step.bounds_after = kChromaBounds;
  // Db slot (target 2) reads G, which is the second source {R, G};
  // Dg slot (target 1) reads R, the first source of {R, B}.
  const std::size_t source = target == 2 ? 1 : 0;
  step.mixer = source == 1 ? take_second() : take_first();
  if (slot.mode() == SlotMode::denoised_difference) {
    step.denoise[source] = *slot.filter();
  }
  return step;
}

inline std::string family_name(const TransformDescriptor& d) {
  switch (d.kind()) {
    case TransformKind::identity: return "identity";
    case TransformKind::rdgdb: return "RDgDb";
    case TransformKind::rct: return "RCT";
    case TransformKind::rdls_rdgdb: return "RDLS-RDgDb";
    case TransformKind::per_slot: return "per-slot RDgDb";
  }
  return "?";
}

inline LiftSequence rct_sequence() {
  LiftSequence seq;
  seq.name = "RCT";
  seq.input_roles = kRgbRoles;

  LiftStep cu;  // B <- B + (-G)
  cu.target = 2;
  cu.combine = Combine::sum;
  cu.mixer = [](Sample, Sample g) { return -std::int64_t{g}; };
  cu.role_before = Role::B;
  cu.role_after = Role::Cu;
  cu.bounds_before = kPrimaryBounds;
  cu.bounds_after = kChromaBounds;

  LiftStep cv;  // R <- R + (-G)
  cv.target = 0;
  cv.combine = Combine::sum;
  cv.mixer = [](Sample g, Sample) { return -std::int64_t{g}; };
  cv.role_before = Role::R;
  cv.role_after = Role::Cv;
  cv.bounds_before = kPrimaryBounds;
  cv.bounds_after = kChromaBounds;

  LiftStep y;  // G <- G + floor((Cu + Cv) / 4); sources are (Cv, Cu)
  y.target = 1;
  y.combine = Combine::sum;
  y.mixer = [](Sample cv_value, Sample cu_value) {
    return floor_div(std::int64_t{cu_value} + cv_value, 4);
  };
  y.role_before = Role::G;
  y.role_after = Role::Y;
  y.bounds_before = kPrimaryBounds;
  y.bounds_after = kPrimaryBounds;

  seq.steps = {cu, cv, y};
  seq.output_order = {1, 2, 0};
  return seq;
}

}  // namespace detail

// Lifting sequence realizing a descriptor.
inline LiftSequence make_sequence(const TransformDescriptor& d) {
  if (d.kind() == TransformKind::rct) return detail::rct_sequence();
  LiftSequence seq;
  seq.name = detail::family_name(d);
  seq.input_roles = kRgbRoles;
  seq.steps.push_back(
      detail::slot_step(2, d.db(), Role::B, Role::Db, Role::dDb));
  seq.steps.push_back(
      detail::slot_step(1, d.dg(), Role::G, Role::Dg, Role::dDg));
  LiftStep keep_r;
  keep_r.target = 0;
  keep_r.combine = Combine::keep;
  keep_r.role_before = keep_r.role_after = Role::R;
  seq.steps.push_back(keep_r);
  return seq;
}

inline ColorImage forward_transform(const ColorImage& img,
                                    const TransformDescriptor& d) {
  return apply_forward(img, make_sequence(d));
}

inline ColorImage inverse_transform(const ColorImage& img,
                                    const TransformDescriptor& d) {
  if (img.roles() != d.output_roles()) {
    throw Error("image roles " + roles_to_string(img.roles()) +
                " do not match transform " + d.describe());
  }
  const LiftSequence seq = make_sequence(d);
  try {
    return apply_inverse(img, seq);
  } catch (const Error& e) {
    if (d.kind() == TransformKind::rdls_rdgdb ||
        d.kind() == TransformKind::per_slot) {
      throw Error(std::string(e.what()) + " (for these filter weights)");
    }
    throw;
  }
}

inline ColorImage rdgdb_forward(const ColorImage& img) {
  return forward_transform(img, TransformDescriptor::rdgdb());
}
inline ColorImage rdgdb_inverse(const ColorImage& img) {
  return inverse_transform(img, TransformDescriptor::rdgdb());
}

inline ColorImage rct_forward(const ColorImage& img) {
  return forward_transform(img, TransformDescriptor::rct());
}
inline ColorImage rct_inverse(const ColorImage& img) {
  return inverse_transform(img, TransformDescriptor::rct());
}

inline ColorImage rdls_rdgdb_forward(const ColorImage& img, FilterSpec w_db,
                                     FilterSpec w_dg) {
  return forward_transform(img, TransformDescriptor::rdls_rdgdb(w_db, w_dg));
}
inline ColorImage rdls_rdgdb_inverse(const ColorImage& img, FilterSpec w_db,
                                     FilterSpec w_dg) {
  return inverse_transform(img, TransformDescriptor::rdls_rdgdb(w_db, w_dg));
}

}  // namespace rdls

#endif  // RDLS_TRANSFORMS_HPP_
