#ifndef RDLS_REPORT_HPP_
#define RDLS_REPORT_HPP_

// JSON reports, schema "rdls-report/1" (docs/FORMATS.md). Percent deltas are
// 100 (value - baseline) / baseline against the RDgDb option of the same
// slot; negative means the option is better than RDgDb.

#include <string>

#include "json.hpp"
#include "rdls/compress.hpp"
#include "rdls/estimate.hpp"
#include "rdls/select.hpp"

namespace rdls {

inline constexpr const char* kReportSchema = "rdls-report/1";
inline constexpr const char* kToolVersion = "1.0.0";

inline nlohmann::json option_json(const SlotOption& o) {
  nlohmann::json j;
  j["option"] = o.label();
  j["mode"] = std::string(to_string(o.mode));
  j["weight"] = o.mode == SlotMode::denoised_difference ? nlohmann::json(o.weight) : nlohmann::json();
  return j;
}

inline nlohmann::json slot_estimates_json(const std::vector<OptionEstimate>& slot) {
  const OptionEstimate* baseline = nullptr;
  for (const auto& e : slot) {
    if (e.option.mode == SlotMode::difference) baseline = &e;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : slot) {
    nlohmann::json j = option_json(e.option);
    j["h0"] = e.h0;
    j["h0_pavg"] = e.h0_pavg;
    j["h0_pmed"] = e.h0_pmed;
    if (e.codec_bpp) j["codec_bpp"] = *e.codec_bpp;
    if (baseline) {
      j["delta_pct"] = {{"h0", percent_delta(e.h0, baseline->h0)},
                        {"h0_pavg", percent_delta(e.h0_pavg, baseline->h0_pavg)},
                        {"h0_pmed", percent_delta(e.h0_pmed, baseline->h0_pmed)}};
    }
    arr.push_back(j);
  }
  return arr;
}

// Best RDLS weight per metric with its delta against RDgDb, as in a table
// row of per-image best filter results.
inline nlohmann::json best_rdls_json(const std::vector<OptionEstimate>& slot) {
  nlohmann::json out;
  for (Metric m : {Metric::h0, Metric::h0_pavg, Metric::h0_pmed}) {
    const OptionEstimate* best = nullptr;
    const OptionEstimate* baseline = nullptr;
    for (const auto& e : slot) {
      if (e.option.mode == SlotMode::difference) baseline = &e;
      if (e.option.mode != SlotMode::denoised_difference) continue;
      if (!best || e.value(m) < best->value(m) ||
          (e.value(m) == best->value(m) && e.option.weight > best->option.weight)) {
        best = &e;
      }
    }
    out[std::string(to_string(m))] = {
        {"weight", best->option.weight},
        {"value", best->value(m)},
        {"delta_pct", percent_delta(best->value(m), baseline->value(m))}};
  }
  return out;
}

inline nlohmann::json estimate_json(const EstimateReport& rep) {
  return {{"dg", slot_estimates_json(rep.dg)},
          {"db", slot_estimates_json(rep.db)},
          {"best_rdls", {{"dg", best_rdls_json(rep.dg)}, {"db", best_rdls_json(rep.db)}}}};
}

inline nlohmann::json slot_selection_json(const SlotSelection& s) {
  nlohmann::json j = option_json(s.chosen);
  j["value"] = s.value;
  nlohmann::json ranked = nlohmann::json::array();
  for (const auto& r : s.ranked) {
    nlohmann::json e = option_json(r.option);
    e["value"] = r.value;
    ranked.push_back(e);
  }
  j["ranked"] = ranked;
  return j;
}

inline nlohmann::json selection_json(const Selection& sel) {
  return {{"metric", std::string(to_string(sel.metric))},
          {"mode", std::string(to_string(sel.mode))},
          {"descriptor", sel.descriptor().describe()},
          {"dg", slot_selection_json(sel.dg)},
          {"db", slot_selection_json(sel.db)}};
}

inline nlohmann::json report_header(const std::string& command, const std::string& input_path,
                                    int width, int height) {
  return {{"schema", kReportSchema},
          {"tool_version", kToolVersion},
          {"command", command},
          {"input", {{"path", input_path}, {"width", width}, {"height", height}}}};
}

}  // namespace rdls

#endif  // RDLS_REPORT_HPP_
