#include "support.hpp"

using namespace apat;
using namespace apat::test;

namespace {

struct Q8 {
  GroupPtr g = grp("8.4");
  Elem i = elem(g, {1, 0, 0});
  Elem j = elem(g, {0, 1, 0});
  Elem m = elem(g, {0, 0, 1});
  Subgroup ci = closure(g, std::vector<Elem>{i});
};

Permutation identity_perm(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

}  // namespace

TEST_CASE("permutation representation") {
  Q8 q;
  auto t = left_transversal(q.ci);
  CHECK(permutation_rep(t, 0) == identity_perm(2));
  CHECK(permutation_rep(t, q.i)[0] == 0);
  CHECK(permutation_rep(t, q.j) == Permutation{1, 0});
  auto g = grp("81.7");
  for (const auto& h : subgroup_layers(g).family()) {
    auto tl = left_transversal(h);
    for (Elem x : h.elements()) CHECK(permutation_rep(tl, x)[0] == 0);
  }
}

TEST_CASE("monomial representation") {
  Q8 q;
  auto t = left_transversal(q.ci);
  auto one = monomial_rep(t, 0);
  CHECK(one.perm == identity_perm(2));
  CHECK(one.monomials == std::vector<Elem>{0, 0});
  // faithful on Q8 with H = <i>
  std::set<std::pair<std::vector<Elem>, Permutation>> seen;
  for (Elem x = 0; x < 8; ++x) {
    auto m = monomial_rep(t, x);
    for (Elem u : m.monomials) CHECK(q.ci.contains(u));
    seen.insert({m.monomials, m.perm});
  }
  CHECK(seen.size() == 8);
  // wreath law over all pairs of 27.4, every maximal subgroup, both sides
  auto g = grp("27.4");
  auto sys = subgroup_layers(g);
  for (const auto& h : sys.layers[1].members)
    for (auto side : {Side::left, Side::right}) {
      auto tr = canonical_transversal(h, side);
      for (Elem x = 0; x < 27; ++x)
        for (Elem y = 0; y < 27; ++y) CHECK(wreath_mul(*g, side, monomial_rep(tr, x), monomial_rep(tr, y)) == monomial_rep(tr, g->mul(x, y)));
    }
}

TEST_CASE("transfer of the quaternion group into <i>") {
  Q8 q;
  auto t = artin_transfer(q.ci);
  CHECK(t(0) == 0);
  CHECK(t(q.i) == 0);
  CHECK(t.derived().trivial());
  CHECK(t(q.j) == t.project(q.m));
  CHECK(t(q.j) != 0);
  CHECK(t(q.j) == t.project(q.g->pow(q.j, 2)));
  CHECK(transfer_kernel(t) == q.ci);
}

TEST_CASE("cycle form") {
  for (const auto& id : {"8.4", "27.3", "81.3", "243.6"}) {
    auto g = grp(id);
    for (const auto& h : subgroup_layers(g).family()) {
      auto t = artin_transfer(h);
      CHECK(transfer_cycle_form(t, 0) == 0);
      const auto n = h.index();
      for (Elem x = 0; x < g->order(); ++x) {
        CHECK(transfer_cycle_form(t, x) == t(x));
        // x generating G/H: one cycle
        if (n > 1 && h.contains(g->pow(x, static_cast<long>(n))) && !h.contains(g->pow(x, static_cast<long>(n) / static_cast<long>(subgroup_layers(g).p))))
          CHECK(t(x) == t.project(g->pow(x, static_cast<long>(n))));
      }
    }
  }
}

TEST_CASE("cycle form agrees on every element of 2187.77") {
  auto g = grp("2187.77");
  auto sys = subgroup_layers(g);
  REQUIRE(sys.layers[1].members.size() == 4);
  for (const auto& h : sys.layers[1].members) {
    auto t = artin_transfer(h);
    for (Elem x = 0; x < g->order(); ++x) CHECK(transfer_cycle_form(t, x) == t(x));
  }
}

TEST_CASE("normal-subgroup form") {
  for (const auto& id : {"8.4", "27.3", "27.4", "81.7", "243.3", "125.3"}) {
    auto g = grp(id);
    for (const auto& h : subgroup_layers(g).family()) {
      auto t = artin_transfer(h);
      CHECK(transfer_normal_form(t, 0) == 0);
      for (Elem x = 0; x < g->order(); ++x) CHECK(transfer_normal_form(t, x) == t(x));
      // inner transfer is the trace over the transversal
      auto tr = left_transversal(h);
      for (Elem x : h.elements()) {
        Elem acc = 0;
        for (Elem l : tr.reps()) acc = t.target()->mul(acc, t.project(g->conj(x, l)));
        CHECK(acc == t(x));
      }
    }
  }
  auto s4 = grp("24.12");
  auto c = closure(s4, std::vector<Elem>{s4->generators()[0]});
  if (!is_normal(c)) CHECK_THROWS_AS(transfer_normal_form(artin_transfer(c), 0), NotNormal);
}

TEST_CASE("transversal independence and homomorphism law") {
  std::mt19937_64 rng(99);
  for (const auto& id : {"8.4", "24.12", "27.4", "243.9"}) {
    auto g = grp(id);
    for (const auto& h : subgroup_layers(g).family()) {
      auto t = artin_transfer(h);
      for (int k = 0; k < 20; ++k) {
        auto other = random_transversal(h, k % 2 ? Side::right : Side::left, rng);
        for (Elem x = 0; x < g->order(); ++x) CHECK(t.evaluate(other, x) == t(x));
      }
      CHECK(is_multiplicative(t.map()));
      CHECK(transfer_kernel(t).contains(derived_subgroup(whole_group(g))));
    }
  }
}

TEST_CASE("composition of transfers") {
  auto g = grp("27.2");
  auto all = whole_group(g);
  auto sys = subgroup_layers(g);
  // H = G
  for (const auto& k : sys.family()) CHECK(compose_transfers(all, k).holds);
  // K = H
  for (const auto& h : sys.family()) CHECK(compose_transfers(h, h).holds);
  // H maximal, K = Phi(G)
  const auto& phi = sys.layers[2].members.back();
  for (const auto& h : sys.layers[1].members) CHECK(compose_transfers(h, phi).holds);
  CHECK_THROWS_AS(compose_transfers(sys.layers[2].members[0], sys.layers[1].members[0]), PreconditionError);
  for (const auto& id : {"81.3", "243.13", "8.4", "243.3"}) {
    auto s = subgroup_layers(grp(id));
    auto fam = s.family();
    for (const auto& h : fam)
      for (const auto& k : fam)
        if (h.contains(k)) CHECK(compose_transfers(h, k).holds);
  }
}

TEST_CASE("stabilizer representation") {
  auto g = grp("81.3");
  auto sys = subgroup_layers(g);
  REQUIRE(sys.shape == LayerShape::p2p);
  const auto& h = sys.layers[1].members.front();
  for (const auto& k : sys.layers[2].members) {
    if (!h.contains(k)) continue;
    StabilizerRep rep(h, k);
    REQUIRE(rep.n() == 3);
    REQUIRE(rep.m() == 3);
    auto one = rep(0);
    CHECK(one.flat() == identity_perm(9));
    for (Elem x = 0; x < g->order(); ++x) {
      CHECK(rep(x).flat() == rep.direct(x));
      for (Elem z = 0; z < g->order(); ++z) CHECK(stabilizer_mul(rep(x), rep(z)).flat() == rep(g->mul(x, z)).flat());
    }
  }
}

TEST_CASE("transfer kernels") {
  // abelian G: T(x) = x^n, so the kernel of a transfer into an index-p subgroup is the p-torsion
  for (const auto& id : {"9.2", "27.2", "25.2", "8.2"}) {
    auto g = grp(id);
    auto p = static_cast<long>(prime_of_power(g->order()));
    std::vector<Elem> torsion;
    for (Elem x = 0; x < g->order(); ++x)
      if (g->pow(x, p) == 0) torsion.push_back(x);
    auto sys = subgroup_layers(g);
    for (const auto& h : sys.layers[1].members) {
      auto k = transfer_kernel(artin_transfer(h));
      CHECK(std::vector<Elem>(k.elements().begin(), k.elements().end()) == torsion);
    }
  }
  auto e9 = subgroup_layers(grp("27.4"));
  std::optional<Subgroup> common;
  for (const auto& h : e9.layers[1].members) {
    auto k = transfer_kernel(artin_transfer(h));
    CHECK(k.index() == 3);
    if (!common) common = k;
    CHECK(k == *common);
  }
  auto e3 = subgroup_layers(grp("27.3"));
  for (const auto& h : e3.layers[1].members) CHECK(transfer_kernel(artin_transfer(h)).whole());
}

TEST_CASE("law suites pass on small groups") {
  LawOptions opt;
  for (const auto& id : {"8.4", "24.12", "27.3", "27.2", "81.3"}) {
    INFO(id);
    for (const auto& r : transfer_laws(grp(id), opt)) {
      INFO(r.name << ": " << r.witness);
      CHECK(r.ok());
      CHECK(r.checks > 0);
    }
  }
}
