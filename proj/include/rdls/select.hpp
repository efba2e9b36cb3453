#ifndef RDLS_SELECT_HPP_
#define RDLS_SELECT_HPP_

// Transform selection per chrominance slot: among leaving the component
// untransformed, the RDgDb difference and the RDLS-RDgDb difference for each
// filter weight, pick the option with the smallest estimator value.
// Ties go to the cheaper option (untransformed, then RDgDb, then RDLS), and
// among RDLS options to the larger weight.

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rdls/core.hpp"
#include "rdls/descriptor.hpp"
#include "rdls/estimate.hpp"
#include "rdls/transforms.hpp"

namespace rdls {

enum class SelectionMode : std::uint8_t {
  per_slot,  // each slot picks its own option
  joint,     // both slots use the same family (none / RDgDb / RDLS-RDgDb)
};

constexpr std::string_view to_string(SelectionMode m) {
  return m == SelectionMode::per_slot ? "per-slot" : "joint";
}

struct RankedOption {
  SlotOption option;
  double value = 0.0;
};

struct SlotSelection {
  SlotOption chosen;
  double value = 0.0;
  std::vector<RankedOption> ranked;  // best first
};

struct Selection {
  Metric metric = Metric::h0_pmed;
  SelectionMode mode = SelectionMode::per_slot;
  SlotSelection dg;
  SlotSelection db;

  TransformDescriptor descriptor() const {
    return TransformDescriptor::per_slot(dg.chosen.transform(), db.chosen.transform());
  }
};

namespace detail {

constexpr int complexity(SlotMode m) { return static_cast<int>(m); }

// Strict "a is preferred over b" at equal-or-better value.
inline bool preferred(const RankedOption& a, const RankedOption& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.option.mode != b.option.mode) return complexity(a.option.mode) < complexity(b.option.mode);
  return a.option.weight > b.option.weight;
}

inline std::vector<RankedOption> rank(const std::vector<OptionEstimate>& estimates,
                                      const std::function<double(const OptionEstimate&)>& value) {
  std::vector<RankedOption> ranked;
  for (const auto& e : estimates) ranked.push_back({e.option, value(e)});
  std::stable_sort(ranked.begin(), ranked.end(), preferred);
  return ranked;
}

inline const RankedOption& best_in_family(const std::vector<RankedOption>& ranked, SlotMode family) {
  for (const auto& r : ranked) {
    if (r.option.mode == family) return r;
  }
  throw Error("no option of family " + std::string(to_string(family)));
}

}  // namespace detail

// Selection from precomputed estimates using an arbitrary per-option value.
inline Selection select_with(const EstimateReport& report,
                             const std::function<double(const OptionEstimate&)>& value,
                             SelectionMode mode) {
  Selection sel;
  sel.mode = mode;
  sel.dg.ranked = detail::rank(report.dg, value);
  sel.db.ranked = detail::rank(report.db, value);
  if (mode == SelectionMode::per_slot) {
    sel.dg.chosen = sel.dg.ranked.front().option;
    sel.dg.value = sel.dg.ranked.front().value;
    sel.db.chosen = sel.db.ranked.front().option;
    sel.db.value = sel.db.ranked.front().value;
    return sel;
  }
  // Joint: the family with the smallest summed value, cheaper on ties.
  SlotMode best_family = SlotMode::untransformed;
  double best_total = 0.0;
  bool first = true;
  for (SlotMode family :
       {SlotMode::untransformed, SlotMode::difference, SlotMode::denoised_difference}) {
    const double total = detail::best_in_family(sel.dg.ranked, family).value +
                         detail::best_in_family(sel.db.ranked, family).value;
    if (first || total < best_total) {
      best_family = family;
      best_total = total;
      first = false;
    }
  }
  const auto& dg = detail::best_in_family(sel.dg.ranked, best_family);
  const auto& db = detail::best_in_family(sel.db.ranked, best_family);
  sel.dg.chosen = dg.option;
  sel.dg.value = dg.value;
  sel.db.chosen = db.option;
  sel.db.value = db.value;
  return sel;
}

inline Selection select_from_report(const EstimateReport& report, Metric metric,
                                    SelectionMode mode = SelectionMode::per_slot) {
  Selection sel = select_with(
      report, [metric](const OptionEstimate& e) { return e.value(metric); }, mode);
  sel.metric = metric;
  return sel;
}

inline Selection select_transform(const ColorImage& rgb, Metric metric,
                                  SelectionMode mode = SelectionMode::per_slot,
                                  unsigned threads = 1) {
  EstimateOptions opts;
  opts.threads = threads;
  return select_from_report(estimate_options(rgb, opts), metric, mode);
}

inline std::pair<ColorImage, TransformDescriptor> apply_selection(const ColorImage& rgb,
                                                                  const Selection& sel) {
  if (!rgb.is_rgb()) {
    throw Error("apply_selection needs an RGB image, got roles " + roles_to_string(rgb.roles()));
  }
  const TransformDescriptor d = sel.descriptor();
  return {forward_transform(rgb, d), d};
}

}  // namespace rdls

#endif  // RDLS_SELECT_HPP_
