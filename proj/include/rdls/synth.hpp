#ifndef RDLS_SYNTH_HPP_
#define RDLS_SYNTH_HPP_

// Seeded, noise-free synthetic scenes with strongly correlated components:
// a luminance field of low-frequency waves, multi-octave value-noise texture
// and a few flat-shaded discs, plus weaker smooth chroma offsets for R and B.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "rdls/core.hpp"

namespace rdls {

namespace detail {

class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  // [lo, hi)
  double operator()(double lo, double hi) {
    constexpr double kScale = 1.0 / 9007199254740992.0;
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * kScale;
  }

 private:
  std::mt19937_64 engine_;
};

struct Wave {
  double amplitude, fx, fy, phase;
  double at(int x, int y) const {
    return amplitude * std::sin(2.0 * std::numbers::pi * (fx * x + fy * y) + phase);
  }
};

struct Disc {
  double cx, cy, radius, dl, du, dv;
};

inline Wave random_wave(UniformSource& u, double amp_lo, double amp_hi) {
  const double period = u(24.0, 220.0);
  const double angle = u(0.0, 2.0 * std::numbers::pi);
  return {u(amp_lo, amp_hi), std::cos(angle) / period, std::sin(angle) / period,
          u(0.0, 2.0 * std::numbers::pi)};
}

// Bilinearly interpolated random lattice with the given cell size.
class ValueNoise {
 public:
  ValueNoise(UniformSource& u, int width, int height, int cell, double amplitude)
      : cell_(cell), cols_(width / cell + 2), amplitude_(amplitude) {
    lattice_.resize(static_cast<std::size_t>(cols_) * (height / cell + 2));
    for (double& v : lattice_) v = u(-1.0, 1.0);
  }
  double at(int x, int y) const {
    const int cx = x / cell_, cy = y / cell_;
    const double fx = static_cast<double>(x % cell_) / cell_;
    const double fy = static_cast<double>(y % cell_) / cell_;
    const auto node = [&](int i, int j) { return lattice_[static_cast<std::size_t>(j) * cols_ + i]; };
    const double top = node(cx, cy) * (1 - fx) + node(cx + 1, cy) * fx;
    const double bottom = node(cx, cy + 1) * (1 - fx) + node(cx + 1, cy + 1) * fx;
    return amplitude_ * (top * (1 - fy) + bottom * fy);
  }

 private:
  int cell_;
  int cols_;
  double amplitude_;
  std::vector<double> lattice_;
};

}  // namespace detail

inline ColorImage synthetic_scene(int width, int height, std::uint64_t seed) {
  if (width < 1 || height < 1) throw Error("synthetic_scene: dimensions must be positive");
  detail::UniformSource u(seed);
  std::vector<detail::Wave> luma, cr, cb;
  for (int i = 0; i < 4; ++i) luma.push_back(detail::random_wave(u, 8.0, 18.0));
  for (int i = 0; i < 2; ++i) cr.push_back(detail::random_wave(u, 3.0, 9.0));
  for (int i = 0; i < 2; ++i) cb.push_back(detail::random_wave(u, 3.0, 9.0));
  std::vector<detail::Disc> discs;
  const double extent = std::min(width, height);
  for (int i = 0; i < 6; ++i) {
    discs.push_back({u(0.0, width), u(0.0, height), u(extent / 16.0, extent / 5.0),
                     u(-40.0, 40.0), u(-15.0, 15.0), u(-15.0, 15.0)});
  }
  const double base = u(100.0, 156.0);
  std::vector<detail::ValueNoise> texture;
  for (const auto& [cell, amplitude] : {std::pair{32, 30.0}, {16, 20.0}, {8, 14.0}, {4, 10.0}, {2, 6.0}}) {
    texture.emplace_back(u, width, height, cell, amplitude);
  }

  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<Sample> r(n), g(n), b(n);
  const auto to_sample = [](double v) {
    return static_cast<Sample>(std::clamp(std::round(v), 0.0, 255.0));
  };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double l = base, du = 0.0, dv = 0.0;
      for (const auto& w : luma) l += w.at(x, y);
      for (const auto& t : texture) l += t.at(x, y);
      for (const auto& w : cr) du += w.at(x, y);
      for (const auto& w : cb) dv += w.at(x, y);
      for (const auto& d : discs) {
        const double ex = x - d.cx, ey = y - d.cy;
        if (ex * ex + ey * ey <= d.radius * d.radius) {
          l += d.dl;
          du += d.du;
          dv += d.dv;
        }
      }
      const std::size_t i = static_cast<std::size_t>(y) * width + x;
      r[i] = to_sample(l + du);
      g[i] = to_sample(l);
      b[i] = to_sample(l + dv);
    }
  }
  return ColorImage::rgb(Plane::make(width, height, kPrimaryBounds, std::move(r)),
                         Plane::make(width, height, kPrimaryBounds, std::move(g)),
                         Plane::make(width, height, kPrimaryBounds, std::move(b)));
}

}  // namespace rdls

#endif  // RDLS_SYNTH_HPP_
