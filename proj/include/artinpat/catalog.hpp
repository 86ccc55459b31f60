#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "artinpat/catalog_data.hpp"
#include "artinpat/tree.hpp"

namespace apat {

enum class Provenance { paper, oracle };

inline std::string to_string(Provenance p) { return p == Provenance::paper ? "paper" : "oracle"; }

// Expected values. Keys:
//   tkt, counter0, ttt.<layer>, bottom, polarization, pol      own values
//   parent, parent.tkt, parent.ttt.<layer>, parent.bottom      lower-central parent
// tkt values are compared as orbits, ttt lists as multisets.
struct Fixture {
  std::string key;
  std::string value;
  Provenance source = Provenance::oracle;
};

struct CatalogEntry {
  std::string id;
  std::uint64_t order = 0;
  std::uint64_t number = 0;
  PcPresentation presentation;
  nlohmann::json oracle;
  std::optional<std::string> lc_parent;
  std::vector<Fixture> fixtures;

  std::vector<const Fixture*> fixtures_from(Provenance p) const {
    std::vector<const Fixture*> out;
    for (const auto& f : fixtures)
      if (f.source == p) out.push_back(&f);
    return out;
  }
};

namespace detail {

struct PaperRow {
  const char* id;
  const char* key;
  const char* value;
};

// Values as printed, in the printed component order.
inline constexpr PaperRow kPaperRows[] = {
    {"4.2", "tkt", "000"},
    {"4.2", "counter0", "3"},
    {"8.4", "ttt.1", "[(4),(4),(4)]"},
    {"8.4", "tkt", "123"},
    {"8.4", "parent", "4.2"},
    {"8.4", "parent.ttt.1", "[(2),(2),(2)]"},
    {"8.4", "parent.tkt", "000"},
    {"8.4", "polarization", "total-polarization"},
    {"27.3", "tkt", "0000"},
    {"27.3", "counter0", "4"},
    {"27.4", "tkt", "1111"},
    {"27.4", "counter0", "0"},
    {"81.7", "tkt", "2000"},
    {"81.7", "counter0", "3"},
    {"243.3", "tkt", "0043"},
    {"243.3", "counter0", "2"},
    {"243.6", "tkt", "0122"},
    {"243.6", "counter0", "1"},
    {"243.8", "tkt", "2034"},
    {"243.8", "counter0", "1"},
    {"243.9", "ttt.1", "[(3,3),(3,3),(3,3),(3,3)]"},
    {"243.9", "tkt", "2143"},
    {"243.9", "parent", "27.3"},
    {"243.9", "parent.ttt.1", "[(9,3),(9,3),(9,3),(9,3)]"},
    {"243.9", "parent.tkt", "0000"},
    {"243.9", "polarization", "total-polarization"},
    {"625.8", "ttt.1", "[(5,5),(5,5),(5,5),(5,5),(5,5),(5,5)]"},
    {"625.8", "tkt", "100000"},
    {"625.8", "parent", "125.3"},
    {"625.8", "parent.ttt.1", "[(5,5,5),(5,5),(5,5),(5,5),(5,5),(5,5)]"},
    {"625.8", "parent.tkt", "000000"},
    {"625.8", "polarization", "unipolarization"},
    {"729.45", "ttt.1", "[(3,3,3),(3,3,3),(9,3),(3,3,3)]"},
    {"729.45", "tkt", "4443"},
    {"729.45", "bottom", "(9,3,3)"},
    {"729.45", "parent", "243.4"},
    {"729.45", "parent.ttt.1", "[(3,3,3),(3,3,3),(9,3),(3,3,3)]"},
    {"729.45", "parent.tkt", "4443"},
    {"729.45", "parent.bottom", "(3,3,3)"},
    {"729.45", "polarization", "total-stabilization"},
    {"2187.77", "ttt.1", "[(9,9),(9,9),(3,3,3),(3,3,3)]"},
    {"2187.77", "tkt", "3443"},
    {"2187.77", "parent", "243.3"},
    {"2187.77", "parent.ttt.1", "[(9,3),(9,3),(3,3,3),(3,3,3)]"},
    {"2187.77", "parent.tkt", "0043"},
    {"2187.77", "polarization", "bipolarization"},
    {"2187.77", "pol", "{1,2}"},
    {"2187.304", "ttt.1", "[(27,9),(9,3),(9,3),(9,3)]"},
    {"2187.304", "tkt", "1231"},
    {"2187.304", "parent", "729.54"},
    {"2187.304", "parent.ttt.1", "[(9,9),(9,3),(9,3),(9,3)]"},
    {"2187.304", "parent.tkt", "0231"},
    {"2187.304", "polarization", "unipolarization"},
    {"2187.304", "pol", "{1}"},
    {"3125.33", "ttt.1", "[(5,5,5),(5,5),(5,5),(5,5),(5,5),(5,5)]"},
    {"3125.33", "tkt", "000000"},
    {"3125.33", "parent", "625.7"},
    {"3125.33", "parent.ttt.1", "[(5,5,5),(5,5),(5,5),(5,5),(5,5),(5,5)]"},
    {"3125.33", "parent.tkt", "000000"},
    {"3125.33", "polarization", "total-stabilization"},
};

inline std::vector<Fixture> oracle_fixtures(const nlohmann::json& o, const std::map<std::string, const nlohmann::json*>& by_id) {
  std::vector<Fixture> out;
  auto ttt_list = [](const nlohmann::json& arr) {
    std::string s = "[";
    for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? "," : "") + arr[i].get<std::string>();
    return s + "]";
  };
  auto add_own = [&](const nlohmann::json& e, const std::string& prefix) {
    if (e.contains("tkt_canonical")) out.push_back({prefix + "tkt", e["tkt_canonical"].get<std::string>(), Provenance::oracle});
    if (e.contains("counter0") && prefix.empty()) out.push_back({"counter0", std::to_string(e["counter0"].get<int>()), Provenance::oracle});
    // layers by index: layer 1 is index p (or the smallest proper index)
    std::vector<std::pair<std::uint64_t, std::string>> idx;
    for (auto it = e.begin(); it != e.end(); ++it) {
      const std::string k = it.key();
      if (k.rfind("ttt_index_", 0) == 0) idx.emplace_back(std::stoull(k.substr(10)), ttt_list(it.value()));
    }
    std::sort(idx.begin(), idx.end());
    for (std::size_t l = 1; l + 1 < idx.size(); ++l) out.push_back({prefix + "ttt." + std::to_string(l), idx[l].second, Provenance::oracle});
    out.push_back({prefix + "bottom", e["derived_type"].get<std::string>(), Provenance::oracle});
  };
  add_own(o, "");
  if (o.contains("lc_pol_count")) {
    // label follows from the count once the layer size is known
    out.push_back({"pol.count", std::to_string(o["lc_pol_count"].get<int>()), Provenance::oracle});
  }
  if (!o["lc_parent"].is_null()) {
    auto pid = o["lc_parent"].get<std::string>();
    out.push_back({"parent", pid, Provenance::oracle});
    if (auto it = by_id.find(pid); it != by_id.end()) add_own(*it->second, "parent.");
  }
  return out;
}

inline std::pair<std::uint64_t, std::uint64_t> split_id(const std::string& id) {
  auto dot = id.find('.');
  if (dot == std::string::npos) return {0, 0};
  try {
    return {std::stoull(id.substr(0, dot)), std::stoull(id.substr(dot + 1))};
  } catch (const std::exception&) {
    return {0, 0};
  }
}

inline std::vector<CatalogEntry> build_catalog() {
  auto pres = parse_presentations(data::catalog_pc);
  auto oracle = nlohmann::json::parse(data::oracle_json);
  std::map<std::string, const nlohmann::json*> by_id;
  for (const auto& o : oracle) by_id[o["id"].get<std::string>()] = &o;
  std::vector<CatalogEntry> out;
  for (auto& p : pres) {
    CatalogEntry e;
    e.id = p.name;
    std::tie(e.order, e.number) = split_id(p.name);
    auto it = by_id.find(p.name);
    if (it == by_id.end()) throw Error("catalog entry '" + p.name + "' has no oracle record");
    e.oracle = *it->second;
    if (!e.oracle["lc_parent"].is_null()) e.lc_parent = e.oracle["lc_parent"].get<std::string>();
    e.fixtures = oracle_fixtures(e.oracle, by_id);
    for (const auto& r : kPaperRows)
      if (e.id == r.id) e.fixtures.push_back({r.key, r.value, Provenance::paper});
    e.presentation = std::move(p);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = detail::build_catalog();
  return entries;
}

inline const CatalogEntry* find_entry(std::string_view id) {
  for (const auto& e : catalog())
    if (e.id == id) return &e;
  return nullptr;
}

inline const CatalogEntry& catalog_entry(std::string_view id) {
  if (auto* e = find_entry(id)) return *e;
  throw UnknownId("unknown catalog id '" + std::string(id) + "'");
}

// Groups are immutable once built, so one instance per id is shared.
inline GroupPtr load_group(std::string_view id) {
  static std::mutex mu;
  static std::map<std::string, GroupPtr, std::less<>> cache;
  const auto& e = catalog_entry(id);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(id); it != cache.end()) return it->second;
  }
  auto g = make_group(e.presentation);
  std::lock_guard lock(mu);
  return cache.emplace(e.id, g).first->second;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "<id>" from the catalog, or "<file>[#name]" holding presentation blocks.
inline GroupPtr resolve_group(const std::string& ref, const std::filesystem::path& base = {}) {
  if (find_entry(ref)) return load_group(ref);
  auto hash = ref.find('#');
  std::filesystem::path file = ref.substr(0, hash);
  if (!base.empty() && file.is_relative()) file = base / file;
  if (!std::filesystem::exists(file)) throw UnknownId("unknown catalog id '" + ref + "' (and no such file)");
  auto blocks = parse_presentations(read_file(file));
  if (blocks.empty()) throw Error("'" + file.string() + "' holds no presentation");
  if (hash == std::string::npos) {
    if (blocks.size() != 1) throw Error("'" + file.string() + "' holds several presentations; select one with #name");
    return make_group(blocks.front());
  }
  auto name = ref.substr(hash + 1);
  for (const auto& b : blocks)
    if (b.name == name) return make_group(b);
  throw UnknownId("no presentation named '" + name + "' in '" + file.string() + "'");
}

struct FixtureCheck {
  const Fixture* fixture = nullptr;
  std::string computed;
  bool ok = false;
};

namespace detail {

inline std::vector<std::string> split_types(std::string_view s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw Error("bad type list '" + std::string(s) + "'");
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> out;
  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == ',' && depth == 0) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (!s.empty()) out.emplace_back(s.substr(start));
  return out;
}

inline std::string type_list(const std::vector<AbelianType>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s + "]";
}

inline bool same_multiset(std::string_view a, std::string_view b) {
  std::vector<AbelianType> x, y;
  for (auto& t : split_types(a)) x.push_back(AbelianType::parse(t));
  for (auto& t : split_types(b)) y.push_back(AbelianType::parse(t));
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

inline std::string canonical_of(std::string_view digits, LayerShape shape) {
  if (shape == LayerShape::p2p) {
    auto semi = digits.find(';');
    if (semi == std::string_view::npos) return std::string(digits);
    auto [a, b] = canonical_tkt(TktDigits::parse(digits.substr(0, semi), 1), TktDigits::parse(digits.substr(semi + 1), 2));
    return a.to_string() + ";" + b.to_string();
  }
  return canonical_tkt(TktDigits::parse(digits)).to_string();
}

}  // namespace detail

// Compares every fixture of the entry against freshly computed values.
inline std::vector<FixtureCheck> check_fixtures(const CatalogEntry& e) {
  auto g = load_group(e.id);
  auto ap = restricted_pattern(g, e.id);
  std::optional<ArtinPattern> pp;
  std::optional<Classification> cls;
  std::optional<ParentEdge> edge;
  auto parent_pattern = [&]() -> const ArtinPattern& {
    if (!pp) {
      edge = parent(g, {SeriesKind::lower_central, 0});
      if (!edge) throw PreconditionError("'" + e.id + "' has no lower-central parent");
      pp = restricted_pattern(edge->parent);
    }
    return *pp;
  };
  auto classification = [&]() -> const Classification& {
    if (!cls) cls = classify_polarization(g);
    return *cls;
  };
  auto own = [&](const ArtinPattern& a, std::string_view key, const std::string& expected) -> std::pair<std::string, bool> {
    if (key == "tkt") {
      auto c = a.tkt_canonical();
      return {c, c == detail::canonical_of(expected, a.shape)};
    }
    if (key == "bottom") {
      auto c = a.bottom().to_string();
      return {c, c == AbelianType::parse(expected).to_string()};
    }
    if (key.rfind("ttt.", 0) == 0) {
      std::size_t l = std::stoul(std::string(key.substr(4)));
      if (l >= a.layers.size()) return {"-", false};
      auto c = detail::type_list(a.layers[l].ttt);
      return {c, detail::same_multiset(c, expected)};
    }
    throw Error("unknown fixture key '" + std::string(key) + "'");
  };
  std::vector<FixtureCheck> out;
  for (const auto& f : e.fixtures) {
    FixtureCheck c{&f, {}, false};
    std::string_view key = f.key;
    if (key == "counter0") {
      c.computed = std::to_string(ap.counter0());
      c.ok = c.computed == f.value;
    } else if (key == "parent") {
      parent_pattern();
      auto verdict = is_isomorphic_small(edge->parent, load_group(f.value));
      c.computed = verdict.isomorphic ? f.value : "not isomorphic: " + verdict.reason;
      c.ok = verdict.isomorphic;
    } else if (key.rfind("parent.", 0) == 0) {
      std::tie(c.computed, c.ok) = own(parent_pattern(), key.substr(7), f.value);
    } else if (key == "polarization") {
      c.computed = to_string(classification().label);
      c.ok = c.computed == f.value;
    } else if (key == "pol.count") {
      c.computed = std::to_string(classification().canonical.polarized.size());
      c.ok = c.computed == f.value;
    } else if (key == "pol") {
      const auto& k = classification();
      c.computed = k.designated ? index_set(k.designated->polarized) : "-";
      c.ok = c.computed == f.value;
    } else {
      std::tie(c.computed, c.ok) = own(ap, key, f.value);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace apat
