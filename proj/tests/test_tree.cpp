#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace apat;
using namespace apat::test;

namespace {

const ParentKind kLc = ParentKind::parse("lower-central");

StbPol designated_stb_pol(const std::string& id) { return stb_pol(grp(id), kLc); }

}  // namespace

TEST_CASE("parent kinds") {
  CHECK(ParentKind::parse("derived").tag == SeriesKind::derived);
  CHECK(ParentKind::parse("lower-p-central:3").p == 3);
  CHECK(ParentKind::parse("lower-p-central").p == 0);
  CHECK(ParentKind::parse("lower-p-central:5").to_string() == "lower-p-central:5");
  CHECK_THROWS_AS(ParentKind::parse("upper-central"), Error);
  CHECK_THROWS_AS(ParentKind::parse("lower-p-central:1"), Error);
  CHECK_THROWS_AS(ParentKind::parse("lower-p-central:x"), Error);
}

TEST_CASE("parents") {
  auto e = parent(grp("2187.304"), kLc);
  REQUIRE(e);
  CHECK(e->parent->order() == 729);
  CHECK(is_isomorphic_small(e->parent, grp("729.54")).isomorphic);
  // metabelian group under the derived kind: G/G'
  auto g = grp("243.6");
  auto d = parent(g, ParentKind::parse("derived"));
  REQUIRE(d);
  CHECK(d->kernel == derived_subgroup(whole_group(g)));
  CHECK(is_abelian(d->parent));
  // elementary abelian under the p-central kind: trivial parent
  auto v = parent(grp("25.2"), ParentKind::parse("lower-p-central"));
  REQUIRE(v);
  CHECK(v->parent->order() == 1);
  CHECK_FALSE(parent(grp("27.2"), kLc).has_value());
  auto root = quotient(whole_group(grp("9.2")));
  CHECK_THROWS_AS(parent(root.group, kLc), RootReached);
  CHECK_THROWS_AS(parent(grp("24.12"), kLc), PreconditionError);
  // every catalog edge leads to the recorded parent
  for (const auto& c : catalog()) {
    if (!c.lc_parent) continue;
    INFO(c.id);
    auto pe = parent(grp(c.id), kLc);
    REQUIRE(pe);
    CHECK(is_isomorphic_small(pe->parent, grp(*c.lc_parent)).isomorphic);
  }
}

TEST_CASE("stable and polarized index sets") {
  auto b = designated_stb_pol("2187.77");
  CHECK(b.polarized == std::vector<std::size_t>{1, 2});
  CHECK(b.stable == std::vector<std::size_t>{3, 4});
  CHECK(index_set(b.polarized) == "{1,2}");
  CHECK(designated_stb_pol("3125.33").polarized.empty());
  CHECK(designated_stb_pol("243.9").polarized == std::vector<std::size_t>{1, 2, 3, 4});
  CHECK(designated_stb_pol("2187.304").polarized == std::vector<std::size_t>{1});
  // the two sets partition the index set, on every edge and every kind
  for (const auto& c : catalog())
    for (const auto* k : {"lower-central", "derived", "lower-p-central"}) {
      auto g = grp(c.id);
      std::optional<ParentEdge> e;
      try {
        e = parent(g, ParentKind::parse(k));
      } catch (const PreconditionError&) {
        continue;
      }
      if (!e) continue;
      auto sys = subgroup_layers(g);
      if (sys.layers.size() < 2) continue;
      auto sp = stb_pol(e->kernel, sys.layers[1].members);
      std::vector<std::size_t> all = sp.stable;
      all.insert(all.end(), sp.polarized.begin(), sp.polarized.end());
      std::sort(all.begin(), all.end());
      std::vector<std::size_t> want(sys.layers[1].members.size());
      std::iota(want.begin(), want.end(), std::size_t{1});
      CHECK(all == want);
    }
}

TEST_CASE("pattern comparison along edges") {
  auto g = grp("729.45");
  auto e = parent(g, kLc);
  REQUIRE(e);
  auto cmp = compare_patterns(restricted_pattern(g), restricted_pattern(e->parent), e->projection);
  CHECK(cmp.consistent());
  for (const auto* c : cmp.layer(1)) {
    CHECK(c->tau == Relation::equal);
    CHECK(c->kappa == Relation::equal);
  }
  auto bottom = cmp.layer(2);
  REQUIRE(bottom.size() == 1);
  CHECK(bottom[0]->tau == Relation::strictly_precedes);
  auto child = restricted_pattern(g);
  auto par = restricted_pattern(e->parent);
  CHECK(child.bottom() == AbelianType::parse("(9,3,3)"));
  CHECK(par.bottom() == AbelianType::parse("(3,3,3)"));
  // identity projection
  auto self = compare_patterns(child, child, identity_hom(g));
  for (const auto& c : self.components) {
    CHECK(c.tau == Relation::equal);
    CHECK(c.kappa == Relation::equal);
  }
  // a kernel outside some member is refused
  auto s = grp("27.2");
  auto n = closure(s, std::vector<Elem>{s->generators()[0]});
  auto q = quotient(n);
  CHECK_THROWS_AS(compare_patterns(restricted_pattern(s), restricted_pattern(q.group), q.projection), PreconditionError);
}

TEST_CASE("polarization classification") {
  auto u = classify_polarization(grp("2187.304"));
  CHECK(u.label == Polarization::unipolarization);
  REQUIRE(u.designated);
  CHECK(u.designated->polarized == std::vector<std::size_t>{1});
  CHECK(u.agree());
  auto m = classify_polarization(grp("625.8"));
  CHECK(m.label == Polarization::unipolarization);
  CHECK(m.agree());
  // U_1 abelian
  auto sys = subgroup_layers(grp("625.8"));
  auto e = parent(grp("625.8"), kLc);
  auto sp = stb_pol(e->kernel, sys.layers[1].members);
  REQUIRE(sp.polarized.size() == 1);
  CHECK(is_abelian(sys.layers[1].members[sp.polarized[0] - 1]));
  auto q = classify_polarization(grp("8.4"));
  CHECK(q.label == Polarization::total_polarization);
  CHECK(classify_polarization(grp("2187.77")).label == Polarization::bipolarization);
  CHECK(classify_polarization(grp("3125.33")).label == Polarization::total_stabilization);
  CHECK(classify_polarization(grp("729.45")).label == Polarization::total_stabilization);
  CHECK_THROWS_AS(classify_polarization(grp("27.2")), PreconditionError);
  CHECK_THROWS_AS(classify_polarization(grp("24.12")), PreconditionError);
  CHECK(polarization_label(2, 6) == Polarization::bipolarization);
  CHECK(to_string(polarization_label(3, 6)) == "partial-polarization");
  for (const auto& c : catalog()) {
    INFO(c.id);
    Classification cl;
    try {
      cl = classify_polarization(grp(c.id));
    } catch (const PreconditionError&) {
      continue;
    }
    CHECK(cl.agree());
    if (c.oracle.contains("lc_pol_count")) CHECK(cl.canonical.polarized.size() == c.oracle["lc_pol_count"].get<std::size_t>());
  }
}

TEST_CASE("layer theorems") {
  auto t = layer_theorems_check(grp("729.45"), kLc);
  CHECK(t.top_stable);
  CHECK(t.bottom_changed);
  CHECK(t.holds());
  // abelian child under the p-central kind: trivial parent, rank theorem out of scope
  auto a = layer_theorems_check(grp("9.2"), ParentKind::parse("lower-p-central"));
  CHECK_FALSE(a.rank_applies);
  CHECK(a.holds());
  for (const auto& c : catalog())
    for (const auto* k : {"lower-central", "derived", "lower-p-central"}) {
      INFO(c.id << " " << k);
      try {
        auto r = layer_theorems_check(grp(c.id), ParentKind::parse(k));
        CHECK(r.holds());
      } catch (const RootReached&) {
      } catch (const PreconditionError&) {
      }
    }
}

TEST_CASE("search over the catalog forest") {
  auto f = catalog_forest();
  CHECK(f.size() == catalog().size());
  SearchQuery q;
  q.tkt = "1231";
  auto r = pattern_search(f, q);
  CHECK(r.matches == std::vector<std::string>{"2187.304"});
  CHECK(r.visited == f.size());
  SearchQuery t;
  t.ttt = SearchQuery::parse_types("(27,9)");
  auto rt = pattern_search(f, t);
  CHECK(rt.matches == std::vector<std::string>{"2187.304"});
  CHECK(rt.pruned > 0);
  CHECK(rt.visited < f.size());
  SearchQuery both;
  both.tkt = "0043";
  both.ttt = SearchQuery::parse_types("[(9,3),(3,3,3)]");
  CHECK(pattern_search(f, both).matches == std::vector<std::string>{"243.3"});
  SearchQuery layered;
  layered.tkt = "0000;0000";
  auto rl = pattern_search(f, layered);
  CHECK(std::find(rl.matches.begin(), rl.matches.end(), "27.2") != rl.matches.end());
}

TEST_CASE("search equals brute force on random queries") {
  auto f = catalog_forest();
  PatternSearch s(f);
  std::vector<std::string> tkts;
  std::vector<AbelianType> pool;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& ap = s.pattern(i);
    if (!ap.tkt_canonical().empty()) tkts.push_back(ap.tkt_canonical());
    if (ap.layers.size() > 1)
      for (const auto& t : ap.layers[1].ttt) pool.push_back(t);
  }
  for (const auto* extra : {"(81,27)", "(3)", "(5,5,5,5)"}) pool.push_back(AbelianType::parse(extra));
  std::mt19937_64 rng(2024);
  std::size_t nonempty = 0;
  for (int round = 0; round < 25; ++round) {
    SearchQuery q;
    if (round % 3 != 2) q.tkt = tkts[rng() % tkts.size()];
    if (round % 3 != 0) {
      std::size_t n = 1 + rng() % 3;
      for (std::size_t k = 0; k < n; ++k) q.ttt.push_back(pool[rng() % pool.size()]);
    }
    auto got = s.run(q);
    INFO("round " << round);
    CHECK(got.matches == s.brute_force(q));
    if (!got.matches.empty()) ++nonempty;
  }
  CHECK(nonempty >= 5);
}

TEST_CASE("forest files") {
  auto dir = std::filesystem::temp_directory_path() / "apat_forest_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream pc(dir / "q.pc");
    pc << "group Q\ngens 3\norders 2 2 2\npow 1 = g3\npow 2 = g3\nconj 2 1 = g2 g3\nend\n";
    std::ofstream js(dir / "forest.json");
    js << R"([{"id": "v4", "presentation-ref": "4.2"},
              {"id": "q8", "presentation-ref": "q.pc#Q", "parent-id": "v4", "parent-kind": "lower-central"}])";
  }
  auto f = Forest::load(dir / "forest.json");
  REQUIRE(f.size() == 2);
  SearchQuery q;
  q.tkt = "123";
  CHECK(pattern_search(f, q).matches == std::vector<std::string>{"q8"});
  // p-central edges switch pruning off below them
  auto pc = Forest::from_json(nlohmann::json::parse(R"([{"id": "a", "presentation-ref": "9.2"},
      {"id": "b", "presentation-ref": "27.3", "parent-id": "a", "parent-kind": "lower-p-central"}])"));
  CHECK_FALSE(pc.monotone_below(0));
  CHECK_THROWS_AS(Forest::from_json(nlohmann::json::parse(R"([{"id": "a", "presentation-ref": "9.2"}, {"id": "a", "presentation-ref": "9.2"}])")), Error);
  CHECK_THROWS_AS(Forest::from_json(nlohmann::json::parse(R"([{"id": "b", "presentation-ref": "9.2", "parent-id": "z", "parent-kind": "derived"}])")), Error);
  CHECK_THROWS_AS(Forest::from_json(nlohmann::json::parse(R"([{"id": "b", "presentation-ref": "9.2", "parent-id": "b", "parent-kind": "derived"}])")), Error);
  CHECK_THROWS_AS(Forest::from_json(nlohmann::json::parse(R"([{"id": "a", "presentation-ref": "9.2"}, {"id": "b", "presentation-ref": "27.3", "parent-id": "a"}])")), Error);
  CHECK_THROWS_AS(Forest::from_json(nlohmann::json::parse(R"({"id": "a"})")), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("law suites on tree edges") {
  for (const auto& id : {"8.4", "243.9", "729.45", "625.8"}) {
    INFO(id);
    for (const auto& r : tree_laws(grp(id))) {
      INFO(r.name << ": " << r.witness);
      CHECK(r.ok());
    }
  }
}
