#ifndef RDLS_SERIES_HPP_
#define RDLS_SERIES_HPP_

// Noise sweep: the same scene with increasing white Gaussian noise, coded
// component by component. For dDg and dDb the filter weight with the lowest
// coded bitrate is reported.

#include <array>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "rdls/codec.hpp"
#include "rdls/estimate.hpp"
#include "rdls/imageio.hpp"

namespace rdls {

inline constexpr std::array<double, 6> kSeriesSigmas{0, 5, 10, 20, 40, 80};

struct SeriesRow {
  double sigma = 0.0;
  double r = 0.0, g = 0.0, b = 0.0;
  double dg = 0.0, db = 0.0;
  double ddg = 0.0, ddb = 0.0;
  int w_dg = 0, w_db = 0;
};

namespace detail {

inline const OptionEstimate& best_denoised(const std::vector<OptionEstimate>& slot) {
  const OptionEstimate* best = nullptr;
  for (const auto& e : slot) {
    if (e.option.mode != SlotMode::denoised_difference) continue;
    if (!best || *e.codec_bpp < *best->codec_bpp ||
        (*e.codec_bpp == *best->codec_bpp && e.option.weight > best->option.weight)) {
      best = &e;
    }
  }
  return *best;
}

}  // namespace detail

inline std::vector<SeriesRow> run_series(const ColorImage& scene, std::span<const double> sigmas,
                                         std::uint64_t seed, unsigned threads = 1) {
  std::vector<SeriesRow> rows;
  for (double sigma : sigmas) {
    const ColorImage noisy = add_awgn(scene, sigma, sigma, sigma, seed);
    const EstimateReport rep = estimate_options_with_codec(noisy, threads);
    SeriesRow row;
    row.sigma = sigma;
    row.r = measure_bitrate(noisy.plane(0));
    row.g = *rep.find(Slot::dg, {SlotMode::untransformed, 0}).codec_bpp;
    row.b = *rep.find(Slot::db, {SlotMode::untransformed, 0}).codec_bpp;
    row.dg = *rep.find(Slot::dg, {SlotMode::difference, 0}).codec_bpp;
    row.db = *rep.find(Slot::db, {SlotMode::difference, 0}).codec_bpp;
    const OptionEstimate& ddg = detail::best_denoised(rep.dg);
    const OptionEstimate& ddb = detail::best_denoised(rep.db);
    row.ddg = *ddg.codec_bpp;
    row.w_dg = ddg.option.weight;
    row.ddb = *ddb.codec_bpp;
    row.w_db = ddb.option.weight;
    rows.push_back(row);
  }
  return rows;
}

inline std::string series_csv(const std::vector<SeriesRow>& rows) {
  std::string out = "sigma,R,G,B,Dg,Db,dDg,dDb,w_dg,w_db\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%g,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%d\n", r.sigma,
                  r.r, r.g, r.b, r.dg, r.db, r.ddg, r.ddb, r.w_dg, r.w_db);
    out += line;
  }
  return out;
}

}  // namespace rdls

#endif  // RDLS_SERIES_HPP_
