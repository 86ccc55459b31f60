#include <numeric>

#include "support.hpp"

using namespace apat;
using namespace apat::test;

namespace {

// i, j, -1 in the catalog quaternion group
struct Q8 {
  GroupPtr g = grp("8.4");
  Elem i = elem(g, {1, 0, 0});
  Elem j = elem(g, {0, 1, 0});
  Elem m = elem(g, {0, 0, 1});
};

std::size_t exponent_of(const Group& g) {
  std::size_t e = 1;
  for (Elem x = 0; x < g.order(); ++x) e = std::lcm(e, g.element_order(x));
  return e;
}

}  // namespace

TEST_CASE("catalog invariants agree with the oracle record") {
  for (const auto& e : catalog()) {
    INFO(e.id);
    auto g = grp(e.id);
    const auto& o = e.oracle;
    auto d = derived_subgroup(whole_group(g));
    CHECK(g->order() == e.order);
    CHECK(abelian_type(quotient(d).group).to_string() == o["abelianization"].get<std::string>());
    CHECK(d.order() == o["derived_order"].get<std::size_t>());
    auto dg = subgroup_as_group(d).group;
    CHECK(abelian_type(quotient(derived_subgroup(whole_group(dg))).group).to_string() == o["derived_type"].get<std::string>());
    CHECK(derived_length(g) == o["derived_length"].get<std::size_t>());
    CHECK(exponent_of(*g) == o["exponent"].get<std::size_t>());
    CHECK(center(g).order() == o["center_order"].get<std::size_t>());
    if (o.contains("class")) {
      CHECK(nilpotency_class(g) == o["class"].get<std::size_t>());
      auto p = static_cast<long>(prime_of_power(g->order()));
      CHECK(series_length(g, SeriesKind::lower_p_central, p) == o["p_class"].get<std::size_t>());
    } else {
      CHECK_FALSE(nilpotency_class(g).has_value());
    }
  }
}

TEST_CASE("subgroup enumeration count matches the oracle") {
  for (const auto& e : catalog()) {
    INFO(e.id);
    CHECK(all_subgroups(grp(e.id)).size() == e.oracle["subgroup_count"].get<std::size_t>());
  }
}

TEST_CASE("subgroups are closed and their generators reproduce them") {
  for (const auto& id : ids_up_to(81)) {
    auto g = grp(id);
    for (const auto& s : all_subgroups(g)) {
      CHECK(s.contains(0));
      for (Elem x : s.elements()) {
        CHECK(s.contains(g->inv(x)));
        for (Elem y : s.elements()) CHECK(s.contains(g->mul(x, y)));
      }
      CHECK(closure(g, s.generators()) == s);
    }
  }
}

TEST_CASE("closure in the quaternion group") {
  Q8 q;
  Elem id[] = {0};
  CHECK(closure(q.g, id).order() == 1);
  Elem i[] = {q.i};
  auto ci = closure(q.g, i);
  CHECK(ci.order() == 4);
  CHECK(ci.contains(q.m));
  CHECK(closure(q.g, q.g->generators()).whole());
}

TEST_CASE("commutator subgroups") {
  Q8 q;
  auto all = whole_group(q.g);
  auto d = derived_subgroup(all);
  CHECK(d.order() == 2);
  CHECK(d.contains(q.m));
  auto c4 = closure(q.g, std::vector<Elem>{q.i});
  CHECK(derived_subgroup(c4).trivial());
  auto e = grp("27.3");
  auto de = derived_subgroup(whole_group(e));
  CHECK(de.order() == 3);
  CHECK(abelian_type(quotient(de).group) == AbelianType::parse("(3,3)"));
}

TEST_CASE("series") {
  auto a = grp("27.2");
  auto ds = series(a, SeriesKind::derived);
  CHECK(ds.size() == 2);
  CHECK(derived_length(a) == 1);
  auto e = series(grp("27.3"), SeriesKind::lower_central);
  REQUIRE(e.size() == 3);
  CHECK(e[1].order() == 3);
  CHECK(nilpotency_class(grp("27.3")) == 2);
  auto g = grp("2187.77");
  CHECK(nilpotency_class(g) == 4);
  // coclass = 7 - class
  CHECK(7 - *nilpotency_class(g) == 3);
  CHECK_FALSE(reaches_trivial(series(grp("24.12"), SeriesKind::lower_central)));
  CHECK(derived_length(grp("24.12")) == 3);
}

TEST_CASE("two-step centralizers") {
  for (const auto& id : {"81.7", "243.6", "625.8", "729.45", "2187.304", "2187.77"}) {
    INFO(id);
    auto g = grp(id);
    auto lc = series(g, SeriesKind::lower_central);
    const std::size_t m = lc.size();  // class + 1
    for (std::size_t j = 2; j <= m + 1; ++j) {
      // brute force over all elements of gamma_j
      const auto& gj = j - 1 < lc.size() ? lc[j - 1] : lc.back();
      const auto& gj2 = j + 1 < lc.size() ? lc[j + 1] : lc.back();
      std::vector<Elem> want;
      for (Elem x = 0; x < g->order(); ++x) {
        bool ok = true;
        for (Elem y : gj.elements()) ok = ok && gj2.contains(g->commutator(x, y));
        if (ok) want.push_back(x);
      }
      auto chi = two_step_centralizer(g, j);
      CHECK(std::vector<Elem>(chi.elements().begin(), chi.elements().end()) == want);
      if (j >= m - 1) CHECK(chi.whole());
    }
  }
  auto g = grp("625.8");
  auto chi2 = two_step_centralizer(g, 2);
  CHECK(chi2.index() == 5);
  // s(G) for a coclass-2 group: first chi_j above G', by the brute-force scan above
  auto g304 = grp("2187.304");
  auto d = derived_subgroup(whole_group(g304));
  std::size_t s = 0;
  for (std::size_t j = 2; j <= 5 && !s; ++j)
    if (two_step_centralizer(g304, j).order() > d.order()) s = j;
  CHECK(s == 3);
  CHECK_THROWS_AS(two_step_centralizer(grp("24.12"), 2), PreconditionError);
}

TEST_CASE("left transversals") {
  Q8 q;
  auto all = whole_group(q.g);
  auto t = left_transversal(all);
  CHECK(t.size() == 1);
  CHECK(t.rep(0) == 0);
  auto triv = left_transversal(trivial_subgroup(q.g));
  REQUIRE(triv.size() == 8);
  for (Elem x = 0; x < 8; ++x) CHECK(triv.rep(x) == x);
  auto ci = closure(q.g, std::vector<Elem>{q.i});
  auto ti = left_transversal(ci);
  REQUIRE(ti.size() == 2);
  CHECK(ti.rep(0) == 0);
  Elem least = 0;
  while (ci.contains(least)) ++least;
  CHECK(ti.rep(1) == least);
}

TEST_CASE("transversals partition the group and start with the identity") {
  std::mt19937_64 rng(7);
  for (const auto& id : {"8.4", "24.12", "27.4", "81.3"}) {
    auto g = grp(id);
    for (const auto& h : all_subgroups(g)) {
      for (auto side : {Side::left, Side::right}) {
        auto t = canonical_transversal(h, side);
        CHECK(t.rep(0) == 0);
        CHECK(is_transversal(h, side, t.reps()));
        std::vector<int> hit(g->order(), 0);
        for (Elem r : t.reps())
          for (Elem u : h.elements()) ++hit[side == Side::left ? g->mul(r, u) : g->mul(u, r)];
        CHECK(std::all_of(hit.begin(), hit.end(), [](int c) { return c == 1; }));
        auto rt = random_transversal(h, side, rng);
        CHECK(is_transversal(h, side, rt.reps()));
      }
    }
  }
}

TEST_CASE("right transversals from left ones") {
  Q8 q;
  auto one = left_transversal(whole_group(q.g));
  CHECK(inverted(one).reps().size() == 1);
  CHECK(inverted(one).rep(0) == 0);
  for (const auto& id : {"27.3", "8.4", "81.7"}) {
    auto g = grp(id);
    for (const auto& h : all_subgroups(g))
      if (is_normal(h)) CHECK(is_transversal(h, Side::right, left_transversal(h).reps()));
  }
  // Sylow 2-subgroup of S4 is not normal
  auto s4 = grp("24.12");
  std::optional<Subgroup> syl;
  for (const auto& h : all_subgroups(s4))
    if (h.order() == 8) syl = h;
  REQUIRE(syl);
  CHECK_FALSE(is_normal(*syl));
  bool some_fail = false;
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    auto t = random_transversal(*syl, Side::left, rng);
    auto r = inverted(t);
    CHECK(r.side() == Side::right);
    CHECK(is_transversal(*syl, Side::right, r.reps()));
    some_fail = some_fail || !is_transversal(*syl, Side::right, t.reps());
  }
  CHECK(some_fail);
}

TEST_CASE("quotients") {
  Q8 q;
  auto a = quotient(trivial_subgroup(q.g));
  CHECK(a.group->order() == 8);
  CHECK(a.projection.bijective());
  CHECK(is_isomorphic_small(a.group, q.g).isomorphic);
  CHECK(quotient(whole_group(q.g)).group->order() == 1);
  auto g = grp("2187.77");
  auto lc = series(g, SeriesKind::lower_central);
  auto pi = quotient(lc[3]);
  CHECK(pi.group->order() == 243);
  CHECK(is_isomorphic_small(pi.group, grp("243.3")).isomorphic);
  CHECK_FALSE(is_isomorphic_small(pi.group, grp("243.4")).isomorphic);
  CHECK_THROWS_AS(quotient(closure(grp("24.12"), std::vector<Elem>{1})), NotNormal);
}

TEST_CASE("layer systems") {
  auto v = grp("9.2");
  auto sv = subgroup_layers(v);
  REQUIRE(sv.layers.size() == 3);
  CHECK(sv.layers[1].members.size() == 4);
  for (const auto& u : sv.layers[1].members) CHECK(u.order() == 3);
  auto e = subgroup_layers(grp("27.3"));
  CHECK(e.shape == LayerShape::pp);
  CHECK(e.layers[1].members.size() == 4);
  for (const auto& id : {"27.2", "81.3", "243.13"}) {
    auto s = subgroup_layers(grp(id));
    CHECK(s.shape == LayerShape::p2p);
    REQUIRE(s.layers.size() == 4);
    CHECK(s.layers[3].index == 27);
    CHECK(s.layers[1].members.size() == 4);
    CHECK(s.layers[2].members.size() == 4);
    CHECK(s.layers[1].distinguished == 3);
    CHECK(s.layers[2].distinguished == 3);
    // H_{1,p+1} contains every index-p^2 member; H_{2,p+1} lies in every maximal one
    for (const auto& u : s.layers[2].members) CHECK(s.layers[1].members.back().contains(u));
    for (const auto& u : s.layers[1].members) CHECK(u.contains(s.layers[2].members.back()));
  }
  for (const auto& c : catalog()) {
    INFO(c.id);
    auto s = subgroup_layers(grp(c.id));
    for (const auto& u : s.family()) {
      CHECK(u.contains(s.derived));
      CHECK(is_normal(u));
    }
    if (s.shape == LayerShape::pp) CHECK(s.layers[1].members.size() == s.p + 1);
  }
}

TEST_CASE("small isomorphism test") {
  auto a = grp("27.3");
  auto v = is_isomorphic_small(a, a);
  CHECK(v.isomorphic);
  REQUIRE(v.map);
  CHECK(v.map->bijective());
  CHECK(is_multiplicative(*v.map));
  auto w = is_isomorphic_small(a, grp("27.4"));
  CHECK_FALSE(w.isomorphic);
  CHECK_FALSE(w.reason.empty());
  CHECK_FALSE(is_isomorphic_small(grp("243.3"), grp("243.4")).isomorphic);
  CHECK_FALSE(is_isomorphic_small(grp("8.2"), grp("8.4")).isomorphic);
}
