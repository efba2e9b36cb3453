#ifndef RDLS_DENOISE_HPP_
#define RDLS_DENOISE_HPP_

// Weighted 3x3 averaging filter used inside the denoising lifting steps.
//
// out(x, y) = round((w * center + sum of in-image neighbours) /
//                   (w + number of in-image neighbours))
//
// The window shrinks at image edges (no padding, no reflection). Rounding is
// to nearest with ties away from zero, in pure integer arithmetic, so forward
// and inverse transforms reproduce identical denoised values everywhere.

#include <array>
#include <cstdint>
#include <vector>

#include "rdls/core.hpp"
#include "rdls/filter_spec.hpp"

namespace rdls {

namespace detail {

inline void require_working_bounds(const Plane& p) {
  if (!kWorkingBounds.contains(p.bounds())) {
    throw Error("denoise: plane bounds [" + std::to_string(p.bounds().min) +
                ", " + std::to_string(p.bounds().max) +
                "] exceed [-511, 511]");
  }
}

// Sum and count of the in-image 8-neighbourhood of every pixel.
struct NeighbourSums {
  std::vector<std::int32_t> sum;
  std::vector<std::int32_t> count;
};

inline NeighbourSums neighbour_sums(const Plane& p) {
  const int w = p.width();
  const int h = p.height();
  NeighbourSums out;
  out.sum.resize(p.size());
  out.count.resize(p.size());
  for (int y = 0; y < h; ++y) {
    const int y0 = y > 0 ? y - 1 : y;
    const int y1 = y + 1 < h ? y + 1 : y;
    for (int x = 0; x < w; ++x) {
      const int x0 = x > 0 ? x - 1 : x;
      const int x1 = x + 1 < w ? x + 1 : x;
      std::int32_t s = 0;
      for (int yy = y0; yy <= y1; ++yy) {
        for (int xx = x0; xx <= x1; ++xx) s += p.at(xx, yy);
      }
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      out.sum[i] = s - p.at(x, y);
      out.count[i] = (y1 - y0 + 1) * (x1 - x0 + 1) - 1;
    }
  }
  return out;
}

}  // namespace detail

inline Plane denoise_plane(const Plane& p, FilterSpec f) {
  detail::require_working_bounds(p);
  const detail::NeighbourSums n = detail::neighbour_sums(p);
  const std::int64_t w = f.weight();
  const auto src = p.samples();
  std::vector<Sample> out(p.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<Sample>(
        round_div(w * src[i] + n.sum[i], w + n.count[i]));
  }
  return Plane::make(p.width(), p.height(), p.bounds(), std::move(out));
}

// Denoised planes for w = 1, 2, 4, ..., 1024 in that order. The neighbour
// sum is computed once; moving from weight w to 2w only adds w*center to the
// numerator and w to the denominator before the rounding division.
inline std::vector<Plane> denoise_plane_all_weights(const Plane& p) {
  detail::require_working_bounds(p);
  const detail::NeighbourSums n = detail::neighbour_sums(p);
  const auto src = p.samples();

  std::vector<std::vector<Sample>> out(FilterSpec::kWeightCount,
                                       std::vector<Sample>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::int64_t center = src[i];
    std::int64_t num = center + n.sum[i];
    std::int64_t den = 1 + n.count[i];
    std::int64_t w = 1;
    for (int k = 0; k < FilterSpec::kWeightCount; ++k) {
      out[k][i] = static_cast<Sample>(round_div(num, den));
      num += w * center;
      den += w;
      w <<= 1;
    }
  }

  std::vector<Plane> planes;
  planes.reserve(out.size());
  for (auto& s : out) {
    planes.push_back(Plane::make(p.width(), p.height(), p.bounds(), std::move(s)));
  }
  return planes;
}

}  // namespace rdls

#endif  // RDLS_DENOISE_HPP_
