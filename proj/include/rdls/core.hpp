#ifndef RDLS_CORE_HPP_
#define RDLS_CORE_HPP_

// Planes, color images and component roles shared by every module.
// All sample arithmetic is exact integer arithmetic.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rdls {

using Sample = std::int32_t;

// Raised for invalid user data: malformed files, out-of-range samples,
// images that are not valid outputs of the transform being inverted.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integer division rounded to nearest, ties away from zero. den > 0.
constexpr std::int64_t round_div(std::int64_t num, std::int64_t den) {
  return num >= 0 ? (2 * num + den) / (2 * den)
                  : -((-2 * num + den) / (2 * den));
}

// Greatest integer not exceeding num / den. den > 0.
constexpr std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  return (num % den != 0 && num < 0) ? q - 1 : q;
}

struct Bounds {
  Sample min = 0;
  Sample max = 0;

  constexpr bool contains(std::int64_t v) const { return v >= min && v <= max; }
  constexpr bool contains(Bounds other) const {
    return other.min >= min && other.max <= max;
  }
  constexpr std::int64_t span() const { return std::int64_t{max} - min + 1; }
  friend constexpr bool operator==(Bounds, Bounds) = default;
};

inline constexpr Bounds kPrimaryBounds{0, 255};
inline constexpr Bounds kChromaBounds{-255, 255};
// Widest bounds accepted by the denoising filter and the plane coder.
inline constexpr Bounds kWorkingBounds{-511, 511};

// One image component. Immutable once constructed; every sample lies
// within bounds() and samples().size() == width() * height().
class Plane {
 public:
  static Plane make(int width, int height, Bounds bounds,
                    std::vector<Sample> samples) {
    if (width < 1 || height < 1) {
      throw Error("plane dimensions must be positive, got " +
                  std::to_string(width) + "x" + std::to_string(height));
    }
    if (bounds.min > bounds.max) {
      throw Error("plane bounds are empty: [" + std::to_string(bounds.min) +
                  ", " + std::to_string(bounds.max) + "]");
    }
    const std::size_t expected =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (samples.size() != expected) {
      throw Error("dimension mismatch: " + std::to_string(width) + "x" +
                  std::to_string(height) + " plane needs " +
                  std::to_string(expected) + " samples, got " +
                  std::to_string(samples.size()));
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!bounds.contains(samples[i])) {
        throw Error("sample out of bounds at index " + std::to_string(i) +
                    ": value " + std::to_string(samples[i]) + " not in [" +
                    std::to_string(bounds.min) + ", " +
                    std::to_string(bounds.max) + "]");
      }
    }
    return Plane(width, height, bounds, std::move(samples));
  }

  static Plane filled(int width, int height, Bounds bounds, Sample value) {
    return make(width, height, bounds,
                std::vector<Sample>(static_cast<std::size_t>(width) *
                                        static_cast<std::size_t>(height),
                                    value));
  }

  int width() const { return width_; }
  int height() const { return height_; }
  Bounds bounds() const { return bounds_; }
  std::size_t size() const { return samples_.size(); }
  std::span<const Sample> samples() const { return samples_; }
  std::span<const Sample> row(int y) const {
    return std::span<const Sample>(samples_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }
  Sample at(int x, int y) const {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }

  // Same samples under different (wider or narrower) bounds; revalidates.
  Plane with_bounds(Bounds bounds) const {
    return make(width_, height_, bounds, samples_);
  }

  friend bool operator==(const Plane& a, const Plane& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.bounds_ == b.bounds_ && a.samples_ == b.samples_;
  }

 private:
  Plane(int width, int height, Bounds bounds, std::vector<Sample> samples)
      : width_(width), height_(height), bounds_(bounds),
        samples_(std::move(samples)) {}

  int width_;
  int height_;
  Bounds bounds_;
  std::vector<Sample> samples_;
};

inline Plane make_plane(int width, int height, Sample min_value,
                        Sample max_value, std::vector<Sample> samples) {
  return Plane::make(width, height, Bounds{min_value, max_value},
                     std::move(samples));
}

inline bool plane_equal(const Plane& a, const Plane& b) { return a == b; }

enum class Role : std::uint8_t { R, G, B, Dg, Db, dDg, dDb, Y, Cu, Cv };

inline constexpr std::array<Role, 10> kAllRoles{
    Role::R,  Role::G,   Role::B,   Role::Dg, Role::Db,
    Role::dDg, Role::dDb, Role::Y, Role::Cu, Role::Cv};

constexpr std::string_view to_string(Role role) {
  switch (role) {
    case Role::R: return "R";
    case Role::G: return "G";
    case Role::B: return "B";
    case Role::Dg: return "Dg";
    case Role::Db: return "Db";
    case Role::dDg: return "dDg";
    case Role::dDb: return "dDb";
    case Role::Y: return "Y";
    case Role::Cu: return "Cu";
    case Role::Cv: return "Cv";
  }
  return "?";
}

inline std::optional<Role> role_from_code(std::uint8_t code) {
  if (code >= kAllRoles.size()) return std::nullopt;
  return static_cast<Role>(code);
}

using Roles = std::array<Role, 3>;

inline constexpr Roles kRgbRoles{Role::R, Role::G, Role::B};
inline constexpr Roles kRdgdbRoles{Role::R, Role::Dg, Role::Db};
inline constexpr Roles kRdlsRoles{Role::R, Role::dDg, Role::dDb};
inline constexpr Roles kRctRoles{Role::Y, Role::Cu, Role::Cv};

// Accepted role layouts: (Y, Cu, Cv), or R followed by one of G/Dg/dDg in
// the green slot and one of B/Db/dDb in the blue slot.
constexpr bool roles_consistent(const Roles& roles) {
  if (roles == kRctRoles) return true;
  const bool green_slot = roles[1] == Role::G || roles[1] == Role::Dg ||
                          roles[1] == Role::dDg;
  const bool blue_slot = roles[2] == Role::B || roles[2] == Role::Db ||
                         roles[2] == Role::dDb;
  return roles[0] == Role::R && green_slot && blue_slot;
}

inline std::string roles_to_string(const Roles& roles) {
  std::string s = "(";
  for (std::size_t i = 0; i < roles.size(); ++i) {
    if (i) s += ",";
    s += to_string(roles[i]);
  }
  return s + ")";
}

// Bounds a plane carrying the given role must fit in.
constexpr Bounds role_bounds(Role role) {
  switch (role) {
    case Role::R:
    case Role::G:
    case Role::B:
    case Role::Y:
      return kPrimaryBounds;
    default:
      return kChromaBounds;
  }
}

class ColorImage {
 public:
  ColorImage(std::array<Plane, 3> planes, Roles roles)
      : planes_(std::move(planes)), roles_(roles) {
    for (const Plane& p : planes_) {
      if (p.width() != planes_[0].width() ||
          p.height() != planes_[0].height()) {
        throw Error("color image planes differ in size");
      }
    }
    if (!roles_consistent(roles_)) {
      throw Error("inconsistent component roles " + roles_to_string(roles_));
    }
    for (std::size_t i = 0; i < 3; ++i) {
      if (!role_bounds(roles_[i]).contains(planes_[i].bounds())) {
        throw Error("plane " + std::to_string(i) + " with role " +
                    std::string(to_string(roles_[i])) +
                    " has bounds wider than its role allows");
      }
    }
  }

  static ColorImage rgb(Plane r, Plane g, Plane b) {
    return ColorImage({std::move(r), std::move(g), std::move(b)}, kRgbRoles);
  }

  int width() const { return planes_[0].width(); }
  int height() const { return planes_[0].height(); }
  std::size_t pixel_count() const { return planes_[0].size(); }
  const Plane& plane(std::size_t i) const { return planes_.at(i); }
  const std::array<Plane, 3>& planes() const { return planes_; }
  Role role(std::size_t i) const { return roles_.at(i); }
  const Roles& roles() const { return roles_; }
  bool is_rgb() const { return roles_ == kRgbRoles; }

  friend bool operator==(const ColorImage&, const ColorImage&) = default;

 private:
  std::array<Plane, 3> planes_;
  Roles roles_;
};

}  // namespace rdls

#endif  // RDLS_CORE_HPP_
