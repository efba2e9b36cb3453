#ifndef RDLS_ESTIMATE_HPP_
#define RDLS_ESTIMATE_HPP_

// Compression-independent measurements: predictive residuals (AVG, MED),
// memoryless entropy and bitrate arithmetic, plus the per-slot sweep over
// transform options that transform selection is based on.
//
// Prediction at image borders: the first pixel predicts the middle of the
// plane's range, the rest of the first row predicts the left neighbour and
// the rest of the first column predicts the upper neighbour.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rdls/core.hpp"
#include "rdls/denoise.hpp"
#include "rdls/descriptor.hpp"
#include "rdls/parallel.hpp"

namespace rdls {

enum class Predictor : std::uint8_t { avg, med };

enum class Metric : std::uint8_t {
  h0,       // entropy of the component itself
  h0_pavg,  // entropy of its AVG residual
  h0_pmed,  // entropy of its MED residual
};

constexpr std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::h0: return "h0";
    case Metric::h0_pavg: return "avg";
    case Metric::h0_pmed: return "med";
  }
  return "?";
}

inline std::optional<Metric> metric_from_string(std::string_view s) {
  if (s == "h0") return Metric::h0;
  if (s == "avg") return Metric::h0_pavg;
  if (s == "med") return Metric::h0_pmed;
  return std::nullopt;
}

namespace detail {

inline Sample mid_range(Bounds b) {
  return static_cast<Sample>((std::int64_t{b.min} + b.max + 1) / 2);
}

constexpr Sample med_predict(Sample a, Sample b, Sample c) {
  const Sample lo = std::min(a, b);
  const Sample hi = std::max(a, b);
  if (c >= hi) return lo;
  if (c <= lo) return hi;
  return a + b - c;
}

}  // namespace detail

// Residual plane (actual - predicted). Bounds are [min - max, max - min] of
// the source plane.
inline Plane predict_residual(const Plane& p, Predictor predictor) {
  const int w = p.width();
  const int h = p.height();
  const Sample spread = p.bounds().max - p.bounds().min;
  std::vector<Sample> out(p.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Sample pred;
      if (x == 0 && y == 0) {
        pred = detail::mid_range(p.bounds());
      } else if (y == 0) {
        pred = p.at(x - 1, y);
      } else if (x == 0) {
        pred = p.at(x, y - 1);
      } else {
        const Sample a = p.at(x - 1, y);
        const Sample b = p.at(x, y - 1);
        if (predictor == Predictor::avg) {
          pred = static_cast<Sample>(floor_div(std::int64_t{a} + b, 2));
        } else {
          pred = detail::med_predict(a, b, p.at(x - 1, y - 1));
        }
      }
      out[static_cast<std::size_t>(y) * w + x] = p.at(x, y) - pred;
    }
  }
  return Plane::make(w, h, Bounds{-spread, spread}, std::move(out));
}

inline Plane predict_avg(const Plane& p) { return predict_residual(p, Predictor::avg); }
inline Plane predict_med(const Plane& p) { return predict_residual(p, Predictor::med); }

// Memoryless entropy in bits per sample over the histogram of occurring
// values. Counts are summed in sorted order, so planes with the same multiset
// of counts give bit-identical results.
inline double entropy_h0(const Plane& p) {
  const Bounds b = p.bounds();
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(b.span()), 0);
  for (Sample s : p.samples()) ++hist[static_cast<std::size_t>(s - b.min)];
  std::vector<std::uint64_t> counts;
  for (std::uint64_t c : hist) {
    if (c) counts.push_back(c);
  }
  std::sort(counts.begin(), counts.end());
  const double n = static_cast<double>(p.size());
  double weighted = 0.0;
  for (std::uint64_t c : counts) {
    const double cd = static_cast<double>(c);
    weighted += cd * std::log2(cd);
  }
  const double h = std::log2(n) - weighted / n;
  return h > 0.0 ? h : 0.0;
}

// Bits per pixel for e compressed bytes covering s pixels: r = 8e/s.
inline double bitrate(std::uint64_t compressed_bytes, std::uint64_t pixel_count) {
  if (pixel_count == 0) throw Error("bitrate: pixel count must be positive");
  return 8.0 * static_cast<double>(compressed_bytes) /
         static_cast<double>(pixel_count);
}

inline double measure(const Plane& p, Metric m) {
  switch (m) {
    case Metric::h0: return entropy_h0(p);
    case Metric::h0_pavg: return entropy_h0(predict_avg(p));
    case Metric::h0_pmed: return entropy_h0(predict_med(p));
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Option sweep

enum class Slot : std::uint8_t { dg = 0, db = 1 };

constexpr std::string_view to_string(Slot s) { return s == Slot::dg ? "dg" : "db"; }

// Candidate content for one chrominance slot.
struct SlotOption {
  SlotMode mode = SlotMode::untransformed;
  int weight = 0;  // center weight, only for denoised_difference

  SlotTransform transform() const {
    switch (mode) {
      case SlotMode::difference: return SlotTransform::difference();
      case SlotMode::denoised_difference: return SlotTransform::denoised(FilterSpec(weight));
      default: return SlotTransform::none();
    }
  }
  std::string label() const {
    switch (mode) {
      case SlotMode::untransformed: return "none";
      case SlotMode::difference: return "rdgdb";
      case SlotMode::denoised_difference: return "rdls-w" + std::to_string(weight);
    }
    return "?";
  }
  friend bool operator==(const SlotOption&, const SlotOption&) = default;
};

// The 13 options per slot: untransformed, plain difference, and the
// denoised difference for each of the 11 filter weights.
inline std::vector<SlotOption> all_slot_options() {
  std::vector<SlotOption> out{{SlotMode::untransformed, 0}, {SlotMode::difference, 0}};
  for (const FilterSpec& f : all_filter_specs()) {
    out.push_back({SlotMode::denoised_difference, f.weight()});
  }
  return out;
}

struct OptionEstimate {
  SlotOption option;
  double h0 = 0.0;
  double h0_pavg = 0.0;
  double h0_pmed = 0.0;
  std::optional<double> codec_bpp;

  double value(Metric m) const {
    switch (m) {
      case Metric::h0: return h0;
      case Metric::h0_pavg: return h0_pavg;
      case Metric::h0_pmed: return h0_pmed;
    }
    return 0.0;
  }
};

struct EstimateReport {
  int width = 0;
  int height = 0;
  std::vector<OptionEstimate> dg;  // options for the G slot
  std::vector<OptionEstimate> db;  // options for the B slot

  const std::vector<OptionEstimate>& slot(Slot s) const { return s == Slot::dg ? dg : db; }
  const OptionEstimate& find(Slot s, const SlotOption& o) const {
    for (const auto& e : slot(s)) {
      if (e.option == o) return e;
    }
    throw Error("estimate report has no entry " + o.label());
  }
};

namespace detail {

inline Plane difference_plane(const Plane& minuend, const Plane& subtrahend) {
  std::vector<Sample> out(minuend.size());
  const auto a = minuend.samples();
  const auto b = subtrahend.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Plane::make(minuend.width(), minuend.height(), kChromaBounds, std::move(out));
}

}  // namespace detail

// Content of a slot under an option, computed directly from the RGB planes.
// Dg slot: G, R - G, R^d - G.  Db slot: B, G - B, G^d - B.
inline Plane slot_plane(const ColorImage& rgb, Slot slot, const SlotOption& o) {
  const Plane& source = slot == Slot::dg ? rgb.plane(0) : rgb.plane(1);
  const Plane& target = slot == Slot::dg ? rgb.plane(1) : rgb.plane(2);
  switch (o.mode) {
    case SlotMode::untransformed: return target;
    case SlotMode::difference: return detail::difference_plane(source, target);
    case SlotMode::denoised_difference:
      return detail::difference_plane(denoise_plane(source, FilterSpec(o.weight)), target);
  }
  return target;
}

struct EstimateOptions {
  // Also encode every option with the internal coder (see codec.hpp).
  bool with_codec = false;
  unsigned threads = 1;
};

inline OptionEstimate estimate_plane(const SlotOption& o, const Plane& p) {
  OptionEstimate e;
  e.option = o;
  e.h0 = entropy_h0(p);
  e.h0_pavg = entropy_h0(predict_avg(p));
  e.h0_pmed = entropy_h0(predict_med(p));
  return e;
}

// Evaluates every option of both slots. codec_bpp is only called when
// opts.with_codec is set.
template <class CodecFn>
EstimateReport estimate_options_with(const ColorImage& rgb, const EstimateOptions& opts,
                                     CodecFn&& codec_bpp) {
  if (!rgb.is_rgb()) {
    throw Error("estimate_options needs an RGB image, got roles " +
                roles_to_string(rgb.roles()));
  }
  const std::vector<SlotOption> options = all_slot_options();
  // Denoised sources for every weight, sharing one neighbour-sum pass each.
  const std::vector<Plane> r_denoised = denoise_plane_all_weights(rgb.plane(0));
  const std::vector<Plane> g_denoised = denoise_plane_all_weights(rgb.plane(1));

  struct Job {
    Slot slot;
    std::size_t option;
  };
  std::vector<Job> jobs;
  for (Slot s : {Slot::dg, Slot::db}) {
    for (std::size_t i = 0; i < options.size(); ++i) jobs.push_back({s, i});
  }

  std::vector<std::optional<OptionEstimate>> results(jobs.size());
  parallel_for(jobs.size(), opts.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    const SlotOption& o = options[job.option];
    const Plane& source = job.slot == Slot::dg ? rgb.plane(0) : rgb.plane(1);
    const Plane& target = job.slot == Slot::dg ? rgb.plane(1) : rgb.plane(2);
    const std::vector<Plane>& denoised = job.slot == Slot::dg ? r_denoised : g_denoised;
    std::optional<Plane> content;
    switch (o.mode) {
      case SlotMode::untransformed: content = target; break;
      case SlotMode::difference: content = detail::difference_plane(source, target); break;
      case SlotMode::denoised_difference:
        content = detail::difference_plane(
            denoised[static_cast<std::size_t>(FilterSpec(o.weight).exponent())], target);
        break;
    }
    OptionEstimate e = estimate_plane(o, *content);
    if (opts.with_codec) e.codec_bpp = codec_bpp(*content);
    results[j] = e;
  });

  EstimateReport report;
  report.width = rgb.width();
  report.height = rgb.height();
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    (jobs[j].slot == Slot::dg ? report.dg : report.db).push_back(*results[j]);
  }
  return report;
}

inline EstimateReport estimate_options(const ColorImage& rgb,
                                       const EstimateOptions& opts = {}) {
  if (opts.with_codec) {
    throw Error("codec bitrates need estimate_options_with_codec (codec.hpp)");
  }
  return estimate_options_with(rgb, opts, [](const Plane&) { return 0.0; });
}

// Percent change with negative meaning improvement: 100 (new - base) / base.
inline double percent_delta(double value, double baseline) {
  if (baseline == 0.0) return value == 0.0 ? 0.0 : HUGE_VAL;
  return 100.0 * (value - baseline) / baseline;
}

}  // namespace rdls

#endif  // RDLS_ESTIMATE_HPP_
