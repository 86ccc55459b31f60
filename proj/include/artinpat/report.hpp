#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "artinpat/pattern.hpp"

namespace apat {

inline constexpr const char* kReportSchema = "artinpat.pattern/1";

struct LayerReport {
  std::size_t layer = 0;
  std::size_t index = 1;
  std::vector<std::string> ttt;
  std::vector<std::string> kernels;  // "layer.position" labels
  std::optional<std::string> tkt;
  std::optional<std::size_t> distinguished;  // 1-based
  friend bool operator==(const LayerReport&, const LayerReport&) = default;
};

struct PatternReport {
  std::string schema = kReportSchema;
  std::string group;
  std::size_t order = 0;
  std::string abelianization;
  std::string shape;
  std::vector<LayerReport> layers;
  std::string tkt_canonical;
  std::size_t counter0 = 0;
  std::vector<std::string> warnings;
  friend bool operator==(const PatternReport&, const PatternReport&) = default;
};

inline PatternReport make_report(const ArtinPattern& ap) {
  PatternReport r;
  r.group = ap.group;
  r.order = ap.order;
  r.abelianization = ap.abelianization().to_string();
  r.shape = to_string(ap.shape);
  for (std::size_t l = 0; l < ap.layers.size(); ++l) {
    const auto& pl = ap.layers[l];
    LayerReport lr;
    lr.layer = l;
    lr.index = pl.index;
    for (const auto& t : pl.ttt) lr.ttt.push_back(t.to_string());
    lr.kernels = pl.kernel_labels;
    if (pl.tkt) {
      lr.tkt = pl.tkt->to_string();
      if (pl.tkt->any_anomaly()) r.warnings.push_back("layer " + std::to_string(l) + ": kernel outside the digit encoding");
    }
    if (pl.distinguished) lr.distinguished = *pl.distinguished + 1;
    r.layers.push_back(std::move(lr));
  }
  r.tkt_canonical = ap.tkt_canonical();
  r.counter0 = ap.counter0();
  // a kernel equal to G' in a proper layer
  const auto& d = ap.derived();
  for (std::size_t l = 1; l + 1 < ap.layers.size(); ++l)
    for (std::size_t i = 0; i < ap.layers[l].kernels.size(); ++i)
      if (ap.layers[l].kernels[i] == d) r.warnings.push_back("layer " + std::to_string(l) + " member " + std::to_string(i + 1) + ": transfer kernel equals G'");
  return r;
}

inline void to_json(nlohmann::json& j, const LayerReport& l) {
  j = nlohmann::json{{"layer", l.layer}, {"index", l.index}, {"ttt", l.ttt}, {"kernels", l.kernels}};
  if (l.tkt) j["tkt"] = *l.tkt;
  if (l.distinguished) j["distinguished"] = *l.distinguished;
}

inline void from_json(const nlohmann::json& j, LayerReport& l) {
  j.at("layer").get_to(l.layer);
  j.at("index").get_to(l.index);
  j.at("ttt").get_to(l.ttt);
  j.at("kernels").get_to(l.kernels);
  l.tkt = j.contains("tkt") ? std::optional<std::string>(j["tkt"].get<std::string>()) : std::nullopt;
  l.distinguished = j.contains("distinguished") ? std::optional<std::size_t>(j["distinguished"].get<std::size_t>()) : std::nullopt;
}

inline void to_json(nlohmann::json& j, const PatternReport& r) {
  j = nlohmann::json{{"schema", r.schema},
                     {"group", r.group},
                     {"order", r.order},
                     {"G/G'", r.abelianization},
                     {"shape", r.shape},
                     {"layers", r.layers},
                     {"tkt_canonical", r.tkt_canonical},
                     {"counter0", r.counter0},
                     {"warnings", r.warnings}};
}

inline void from_json(const nlohmann::json& j, PatternReport& r) {
  j.at("schema").get_to(r.schema);
  if (r.schema != kReportSchema) throw Error("unsupported report schema '" + r.schema + "'");
  j.at("group").get_to(r.group);
  j.at("order").get_to(r.order);
  j.at("G/G'").get_to(r.abelianization);
  j.at("shape").get_to(r.shape);
  j.at("layers").get_to(r.layers);
  j.at("tkt_canonical").get_to(r.tkt_canonical);
  j.at("counter0").get_to(r.counter0);
  j.at("warnings").get_to(r.warnings);
}

inline std::string render(const PatternReport& r) { return nlohmann::json(r).dump(2); }

inline PatternReport parse_report(std::string_view text) { return nlohmann::json::parse(text).get<PatternReport>(); }

// Plain-text rendering for the terminal.
inline std::string render_text(const PatternReport& r, bool layers) {
  std::string s = r.group + "  order " + std::to_string(r.order) + "  G/G' " + r.abelianization + "\n";
  for (const auto& l : r.layers) {
    if (!layers && (l.layer == 0 || l.layer + 1 == r.layers.size()) && r.layers.size() > 2) continue;
    if (!layers && l.layer > 1 && r.shape != "(p^2,p)") continue;
    s += "  layer " + std::to_string(l.layer) + " (index " + std::to_string(l.index) + ")  ttt [";
    for (std::size_t i = 0; i < l.ttt.size(); ++i) s += (i ? "," : "") + l.ttt[i];
    s += "]";
    if (l.tkt) s += "  tkt " + *l.tkt;
    s += "\n";
  }
  if (!r.tkt_canonical.empty()) s += "  tkt (canonical) " + r.tkt_canonical + "\n";
  s += "  total kernels " + std::to_string(r.counter0) + "\n";
  for (const auto& w : r.warnings) s += "  warning: " + w + "\n";
  return s;
}

}  // namespace apat
