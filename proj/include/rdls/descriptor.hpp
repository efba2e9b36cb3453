#ifndef RDLS_DESCRIPTOR_HPP_
#define RDLS_DESCRIPTOR_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "rdls/core.hpp"
#include "rdls/filter_spec.hpp"

namespace rdls {

enum class TransformKind : std::uint8_t {
  identity = 0,
  rdgdb = 1,
  rct = 2,
  rdls_rdgdb = 3,
  // Independent choice per chrominance slot (see SlotTransform).
  per_slot = 4,
};

constexpr std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::identity: return "identity";
    case TransformKind::rdgdb: return "rdgdb";
    case TransformKind::rct: return "rct";
    case TransformKind::rdls_rdgdb: return "rdls-rdgdb";
    case TransformKind::per_slot: return "per-slot";
  }
  return "?";
}

enum class SlotMode : std::uint8_t {
  untransformed = 0,        // G (or B) kept as is
  difference = 1,           // Dg = R - G, Db = G - B
  denoised_difference = 2,  // dDg = R^d - G, dDb = G^d - B
};

constexpr std::string_view to_string(SlotMode mode) {
  switch (mode) {
    case SlotMode::untransformed: return "none";
    case SlotMode::difference: return "rdgdb";
    case SlotMode::denoised_difference: return "rdls";
  }
  return "?";
}

// What happens to one chrominance slot of an RDgDb-family transform.
// A filter is present exactly when mode == denoised_difference.
class SlotTransform {
 public:
  static SlotTransform none() { return SlotTransform(SlotMode::untransformed, {}); }
  static SlotTransform difference() { return SlotTransform(SlotMode::difference, {}); }
  static SlotTransform denoised(FilterSpec f) {
    return SlotTransform(SlotMode::denoised_difference, f);
  }

  SlotMode mode() const { return mode_; }
  const std::optional<FilterSpec>& filter() const { return filter_; }

  std::string describe() const {
    std::string s(to_string(mode_));
    if (filter_) s += "(w=" + std::to_string(filter_->weight()) + ")";
    return s;
  }

  friend bool operator==(const SlotTransform&, const SlotTransform&) = default;

 private:
  SlotTransform(SlotMode mode, std::optional<FilterSpec> filter)
      : mode_(mode), filter_(filter) {}

  SlotMode mode_;
  std::optional<FilterSpec> filter_;
};

// Everything needed to invert a transformed image. RDLS-RDgDb carries the two
// filters (Db step, Dg step); the other named kinds carry none. Per-slot
// descriptors whose slots match a named kind are normalized to that kind.
class TransformDescriptor {
 public:
  static TransformDescriptor identity() {
    return TransformDescriptor(TransformKind::identity, SlotTransform::none(),
                               SlotTransform::none());
  }
  static TransformDescriptor rdgdb() {
    return TransformDescriptor(TransformKind::rdgdb, SlotTransform::difference(),
                               SlotTransform::difference());
  }
  static TransformDescriptor rct() {
    return TransformDescriptor(TransformKind::rct, SlotTransform::none(),
                               SlotTransform::none());
  }
  static TransformDescriptor rdls_rdgdb(FilterSpec w_db, FilterSpec w_dg) {
    return TransformDescriptor(TransformKind::rdls_rdgdb,
                               SlotTransform::denoised(w_dg),
                               SlotTransform::denoised(w_db));
  }
  static TransformDescriptor per_slot(SlotTransform dg, SlotTransform db) {
    if (dg.mode() == SlotMode::untransformed && db.mode() == SlotMode::untransformed)
      return identity();
    if (dg.mode() == SlotMode::difference && db.mode() == SlotMode::difference)
      return rdgdb();
    if (dg.mode() == SlotMode::denoised_difference &&
        db.mode() == SlotMode::denoised_difference)
      return rdls_rdgdb(*db.filter(), *dg.filter());
    return TransformDescriptor(TransformKind::per_slot, dg, db);
  }

  TransformKind kind() const { return kind_; }
  // Slot choices; meaningless for rct (both report none).
  const SlotTransform& dg() const { return dg_; }
  const SlotTransform& db() const { return db_; }

  Roles output_roles() const {
    if (kind_ == TransformKind::rct) return kRctRoles;
    return Roles{Role::R, slot_role(dg_.mode(), Role::G, Role::Dg, Role::dDg),
                 slot_role(db_.mode(), Role::B, Role::Db, Role::dDb)};
  }

  std::string describe() const {
    std::string s(to_string(kind_));
    if (kind_ == TransformKind::rdls_rdgdb) {
      s += "(w_dg=" + std::to_string(dg_.filter()->weight()) +
           ", w_db=" + std::to_string(db_.filter()->weight()) + ")";
    } else if (kind_ == TransformKind::per_slot) {
      s += "(dg=" + dg_.describe() + ", db=" + db_.describe() + ")";
    }
    return s;
  }

  friend bool operator==(const TransformDescriptor&,
                         const TransformDescriptor&) = default;

 private:
  TransformDescriptor(TransformKind kind, SlotTransform dg, SlotTransform db)
      : kind_(kind), dg_(dg), db_(db) {}

  static constexpr Role slot_role(SlotMode mode, Role plain, Role diff,
                                  Role denoised) {
    switch (mode) {
      case SlotMode::untransformed: return plain;
      case SlotMode::difference: return diff;
      case SlotMode::denoised_difference: return denoised;
    }
    return plain;
  }

  TransformKind kind_;
  SlotTransform dg_;
  SlotTransform db_;
};

}  // namespace rdls

#endif  // RDLS_DESCRIPTOR_HPP_
