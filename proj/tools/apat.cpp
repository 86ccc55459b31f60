#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "artinpat/artinpat.hpp"

namespace {

using apat::GroupPtr;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kVerdictFailed = 1;
constexpr int kUsage = 2;

std::string layer_label(const apat::ParentKind& k) { return k.to_string(); }

int cmd_pattern(const std::string& ref, bool layers, bool as_json) {
  auto g = apat::resolve_group(ref);
  auto ap = apat::restricted_pattern(g, apat::find_entry(ref) ? ref : g->name());
  auto rep = apat::make_report(ap);
  if (as_json) std::cout << apat::render(rep) << "\n";
  else std::cout << apat::render_text(rep, layers);
  return kOk;
}

int cmd_compare(const std::string& ref, const std::string& kind_text, bool as_json) {
  auto kind = apat::ParentKind::parse(kind_text);
  auto g = apat::resolve_group(ref);
  auto e = apat::parent(g, kind);
  if (!e) throw apat::RootReached("'" + ref + "' has no parent under " + layer_label(kind));
  auto sys = apat::subgroup_layers(g);
  for (const auto& u : sys.family())
    if (!u.contains(e->kernel)) throw apat::PreconditionError("comparability fails: the parent kernel is not inside every member of the layer system");
  auto child = apat::pattern_from_layers(sys, ref);
  auto par = apat::restricted_pattern(e->parent, "parent");
  auto cmp = apat::compare_patterns(child, par, e->projection);
  bool designated = false;
  auto ordered = apat::reporting_members(g, sys, &designated);
  auto sp = apat::stb_pol(e->kernel, ordered);
  auto label = apat::polarization_label(sp.polarized.size(), ordered.size());

  std::string parent_name;
  for (const auto& c : apat::catalog())
    if (c.order == e->parent->order() && e->parent->order() <= apat::kIsoBound && apat::is_isomorphic_small(e->parent, apat::load_group(c.id)).isomorphic) {
      parent_name = c.id;
      break;
    }

  if (as_json) {
    json j{{"schema", "artinpat.compare/1"},
           {"group", ref},
           {"parent-kind", kind.to_string()},
           {"parent", parent_name.empty() ? json(nullptr) : json(parent_name)},
           {"parent-order", e->parent->order()},
           {"label", apat::to_string(label)},
           {"pol", sp.polarized},
           {"stb", sp.stable},
           {"numbering", designated ? "designated" : "canonical"},
           {"consistent", cmp.consistent()}};
    json comps = json::array();
    for (const auto& c : cmp.components)
      comps.push_back({{"layer", c.layer}, {"member", c.child_pos + 1}, {"parent-member", c.parent_pos + 1}, {"tau", apat::to_string(c.tau)}, {"kappa", apat::to_string(c.kappa)}});
    j["components"] = comps;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << apat::to_string(label) << "; Pol=" << apat::index_set(sp.polarized) << " Stb=" << apat::index_set(sp.stable) << "\n";
    std::cout << "parent: " << (parent_name.empty() ? "order " + std::to_string(e->parent->order()) + " (not in catalog)" : parent_name) << " via "
              << kind.to_string() << "\n";
    for (const auto& c : cmp.components)
      std::cout << "  layer " << c.layer << " member " << c.child_pos + 1 << " -> " << c.parent_pos + 1 << ": tau " << apat::to_string(c.tau) << ", kappa "
                << apat::to_string(c.kappa) << "\n";
  }
  return cmp.consistent() ? kOk : kVerdictFailed;
}

int cmd_classify(const std::string& ref, bool as_json) {
  auto g = apat::resolve_group(ref);
  auto c = apat::classify_polarization(g);
  const auto& sp = c.designated ? *c.designated : c.canonical;
  if (as_json) {
    json j{{"schema", "artinpat.classify/1"},
           {"group", ref},
           {"label", apat::to_string(c.label)},
           {"pol", sp.polarized},
           {"stb", sp.stable},
           {"numbering", c.designated ? "designated" : "canonical"},
           {"structural", c.structural ? json(apat::to_string(*c.structural)) : json(nullptr)},
           {"criterion", c.criterion},
           {"agree", c.agree()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << apat::to_string(c.label) << "; Pol=" << apat::index_set(sp.polarized) << " Stb=" << apat::index_set(sp.stable) << "\n";
    std::cout << "structure: " << c.criterion;
    if (c.structural) std::cout << " => " << apat::to_string(*c.structural) << (c.agree() ? " (agrees)" : " (DISAGREES)");
    std::cout << "\n";
  }
  return c.agree() ? kOk : kVerdictFailed;
}

int cmd_search(const std::string& forest_ref, const std::string& tkt, const std::string& ttt, bool as_json) {
  auto forest = forest_ref == "catalog" ? apat::catalog_forest() : apat::Forest::load(forest_ref);
  apat::SearchQuery q;
  if (!tkt.empty()) q.tkt = tkt;
  q.ttt = apat::SearchQuery::parse_types(ttt);
  apat::PatternSearch s(forest);
  auto r = s.run(q);
  if (as_json) {
    json matches = json::array();
    for (const auto& id : r.matches) {
      for (std::size_t i = 0; i < forest.size(); ++i)
        if (forest.node(i).id == id) matches.push_back(apat::make_report(s.pattern(i)));
    }
    json j{{"schema", "artinpat.search/1"}, {"matches", matches}, {"visited", r.visited}, {"pruned", r.pruned}};
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& id : r.matches) std::cout << id << "\n";
    std::cout << "matches " << r.matches.size() << ", visited " << r.visited << ", pruned " << r.pruned << "\n";
  }
  return kOk;
}

std::string law_line(const apat::LawResult& r) {
  std::string s = (r.ok() ? "ok   " : "FAIL ") + r.name + " (" + std::to_string(r.checks) + " checks";
  if (r.skipped) s += ", " + std::to_string(r.skipped) + " skipped";
  s += ")";
  if (!r.ok()) s += ": " + std::to_string(r.failures) + " failures, first: " + r.witness;
  return s;
}

int cmd_verify(const std::string& ref, const apat::LawOptions& opt, unsigned jobs) {
  std::vector<std::string> ids;
  if (ref == "all") {
    for (const auto& e : apat::catalog()) ids.push_back(e.id);
  } else {
    ids.push_back(ref);
  }
  std::vector<std::string> out(ids.size());
  std::vector<int> ok(ids.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < ids.size();) {
      const auto* entry = apat::find_entry(ids[i]);
      GroupPtr g = apat::resolve_group(ids[i]);
      auto suite = apat::verify_laws(g, opt, entry ? std::optional<std::size_t>(entry->order) : std::nullopt);
      std::string s = ids[i] + "\n";
      for (const auto& r : suite.results) s += "  " + law_line(r) + "\n";
      out[i] = s;
      ok[i] = suite.ok();
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(ids.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& s : out) std::cout << s;
  return std::all_of(ok.begin(), ok.end(), [](int v) { return v; }) ? kOk : kVerdictFailed;
}

int cmd_catalog_list(bool as_json) {
  json arr = json::array();
  for (const auto& e : apat::catalog()) {
    json j{{"id", e.id}, {"order", e.order}, {"G/G'", e.oracle["abelianization"]}, {"parent", e.lc_parent ? json(*e.lc_parent) : json(nullptr)}};
    if (e.oracle.contains("class")) j["class"] = e.oracle["class"];
    arr.push_back(j);
  }
  if (as_json) {
    std::cout << json{{"schema", "artinpat.catalog/1"}, {"entries", arr}}.dump(2) << "\n";
    return kOk;
  }
  for (const auto& j : arr) {
    std::string line = j["id"].get<std::string>();
    line.resize(10, ' ');
    line += "order " + std::to_string(j["order"].get<std::size_t>());
    line.resize(22, ' ');
    line += "G/G' " + j["G/G'"].get<std::string>();
    line.resize(38, ' ');
    if (j.contains("class")) line += "class " + std::to_string(j["class"].get<int>());
    line.resize(48, ' ');
    if (!j["parent"].is_null()) line += "parent " + j["parent"].get<std::string>();
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::cout << line << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Artin transfer patterns of finite p-groups"};
  app.require_subcommand(1);
  bool as_json = false, layers = false;
  std::string ref, kind = "lower-central", forest, tkt, ttt;
  apat::LawOptions opt;
  unsigned jobs = 1;

  auto* pattern = app.add_subcommand("pattern", "restricted Artin pattern of a group");
  pattern->add_option("group", ref, "catalog id or presentation file[#name]")->required();
  pattern->add_flag("--layers", layers, "show every layer");
  pattern->add_flag("--json", as_json, "JSON report");

  auto* compare = app.add_subcommand("compare", "compare a group's pattern with its parent's");
  compare->add_option("group", ref, "catalog id or presentation file[#name]")->required();
  compare->add_option("--parent-kind", kind, "lower-central, derived or lower-p-central[:p]");
  compare->add_flag("--json", as_json, "JSON report");

  auto* classify = app.add_subcommand("classify", "polarization along the lower central parent edge");
  classify->add_option("group", ref, "catalog id or presentation file[#name]")->required();
  classify->add_flag("--json", as_json, "JSON report");

  auto* search = app.add_subcommand("search", "search a forest for a pattern");
  search->add_option("forest", forest, "forest JSON file, or 'catalog'")->required();
  search->add_option("--tkt", tkt, "transfer kernel digits, matched up to renumeration");
  search->add_option("--ttt", ttt, "required layer-1 targets, e.g. \"(27,9)\" or \"[(9,3),(9,3)]\"");
  search->add_flag("--json", as_json, "JSON report");

  auto* verify = app.add_subcommand("verify-laws", "run the property suites on one group, or 'all'");
  verify->add_option("group", ref, "catalog id, presentation file[#name], or 'all'")->required();
  verify->add_option("--samples", opt.samples, "pairs sampled above the exhaustive bound");
  verify->add_option("--exhaustive-bound", opt.exhaustive_bound, "largest order checked exhaustively");
  verify->add_option("--seed", opt.seed, "random seed");
  verify->add_option("-j,--jobs", jobs, "worker threads for 'all'");

  auto* cat = app.add_subcommand("catalog", "embedded catalog");
  auto* list = cat->add_subcommand("list", "list catalog entries");
  list->add_flag("--json", as_json, "JSON output");
  cat->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*pattern) return cmd_pattern(ref, layers, as_json);
    if (*compare) return cmd_compare(ref, kind, as_json);
    if (*classify) return cmd_classify(ref, as_json);
    if (*search) return cmd_search(forest, tkt, ttt, as_json);
    if (*verify) return cmd_verify(ref, opt, jobs);
    if (*list) return cmd_catalog_list(as_json);
  } catch (const apat::UnknownId& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const apat::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const apat::BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kUsage;
  } catch (const apat::InconsistentPresentation& e) {
    std::cerr << "inconsistent presentation: " << e.what() << "\n";
    return kUsage;
  } catch (const apat::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kUsage;
  } catch (const apat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
