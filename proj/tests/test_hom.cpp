#include "support.hpp"

using namespace apat;
using namespace apat::test;

namespace {

GroupPtr c4() { return Group::from_presentation(parse_presentation("group C4\ngens 2\norders 2 2\npow 1 = g2\nend\n")); }

struct Q8toV4 {
  GroupPtr q = grp("8.4");
  GroupPtr v = grp("4.2");
  Elem i = elem(q, {1, 0, 0});
  Elem j = elem(q, {0, 1, 0});
  Elem m = elem(q, {0, 0, 1});
  GroupHomomorphism phi = make_hom(q, v, std::vector<Elem>{i, j}, std::vector<Elem>{v->generators()[0], v->generators()[1]});
};

}  // namespace

TEST_CASE("make_hom: identity") {
  auto g = grp("27.3");
  auto id = make_hom(g, g, g->generators());
  CHECK(id.kernel().trivial());
  CHECK(id.bijective());
  for (Elem x = 0; x < g->order(); ++x) CHECK(id(x) == x);
}

TEST_CASE("make_hom: quaternion onto the Klein four group") {
  Q8toV4 h;
  CHECK(is_multiplicative(h.phi));
  CHECK(h.phi.surjective());
  auto k = h.phi.kernel();
  CHECK(k.order() == 2);
  CHECK(k.contains(h.m));
}

TEST_CASE("make_hom: a relation violation names a witness") {
  Q8toV4 h;
  auto c = c4();
  Elem t = c->generators()[0];
  try {
    make_hom(h.q, c, std::vector<Elem>{h.i, h.j}, std::vector<Elem>{t, t});
    FAIL("accepted i, j -> t, t into C4");
  } catch (const RelationViolation& e) {
    CHECK_FALSE(e.witness().empty());
  }
  CHECK_FALSE(try_make_hom(h.q, c, std::vector<Elem>{h.i, h.j}, std::vector<Elem>{t, t}).has_value());
  CHECK(try_make_hom(h.q, c, std::vector<Elem>{h.i, h.j}, std::vector<Elem>{t, c->pow(t, 2)}).has_value() == false);
  CHECK(try_make_hom(h.q, c, std::vector<Elem>{h.i, h.j}, std::vector<Elem>{c->pow(t, 2), c->pow(t, 2)}).has_value());
  CHECK_THROWS_AS(make_hom(h.q, c, std::vector<Elem>{h.i}, std::vector<Elem>{t}), PreconditionError);
}

TEST_CASE("projections are multiplicative with normal kernels") {
  for (const auto& e : catalog()) {
    INFO(e.id);
    auto g = grp(e.id);
    auto d = quotient(derived_subgroup(whole_group(g)));
    CHECK(is_multiplicative(d.projection));
    CHECK(is_normal(d.projection.kernel()));
    CHECK(d.projection.kernel() == d.kernel);
    if (e.lc_parent) {
      auto pe = parent(g, ParentKind::parse("lower-central"));
      REQUIRE(pe);
      CHECK(is_multiplicative(pe->projection));
      CHECK(is_normal(pe->projection.kernel()));
    }
  }
}

TEST_CASE("image and preimage") {
  Q8toV4 h;
  CHECK(preimage_of(h.phi, trivial_subgroup(h.v)) == h.phi.kernel());
  auto ker = h.phi.kernel();
  for (const auto& u : all_subgroups(h.q)) CHECK(preimage_of(h.phi, image_of(h.phi, u)) == join(u, ker));
  // quotients of Q8 and every subgroup of the target
  for (const auto& n : all_subgroups(h.q)) {
    if (!is_normal(n)) continue;
    auto qq = quotient(n);
    auto im = qq.projection.image();
    for (const auto& v : all_subgroups(qq.group)) CHECK(image_of(qq.projection, preimage_of(qq.projection, v)) == intersection(im, v));
  }
}

TEST_CASE("induced homomorphisms on quotients") {
  Q8toV4 h;
  auto ker = h.phi.kernel();
  auto iso = induced_on_quotients(h.phi, ker, trivial_subgroup(h.v));
  CHECK(iso.map.bijective());
  auto same = induced_on_quotients(h.phi, trivial_subgroup(h.q), trivial_subgroup(h.v));
  for (Elem x = 0; x < h.q->order(); ++x) CHECK(same.target.projection(h.phi(x)) == same.map(same.source.projection(x)));
  // natural projection Q8 -> Q8/<-1> with U = <i>, V = sigma(<i>)
  auto sigma = quotient(ker);
  auto u = closure(h.q, std::vector<Elem>{h.i});
  auto v = image_of(sigma.projection, u);
  auto ind = induced_on_quotients(sigma.projection, u, v);
  CHECK(ind.map.kernel().order() == preimage_of(sigma.projection, v).order() / u.order());
  auto pre = preimage_of(sigma.projection, v);
  CHECK(ind.map.kernel() == image_of(ind.source.projection, pre));
  CHECK_THROWS_AS(induced_on_quotients(h.phi, whole_group(h.q), trivial_subgroup(h.v)), FactorizationError);
}

TEST_CASE("factor through a quotient") {
  Q8toV4 h;
  auto t = factor_through_quotient(h.phi, trivial_subgroup(h.q));
  for (Elem x = 0; x < h.q->order(); ++x) CHECK(t.map(t.source.projection(x)) == h.phi(x));
  auto k = factor_through_quotient(h.phi, h.phi.kernel());
  CHECK(k.map.injective());
  CHECK(k.map.bijective());
  CHECK_THROWS_AS(factor_through_quotient(h.phi, whole_group(h.q)), FactorizationError);
}

TEST_CASE("series factorization criterion") {
  Q8toV4 h;
  auto c = series_factor_criterion(h.phi, SeriesKind::derived, 1);
  CHECK(c.factors);
  CHECK(c.bounded);
  auto g = grp("81.7");
  REQUIRE(nilpotency_class(g) == 3);
  auto id = identity_hom(g);
  auto lc = series_factor_criterion(id, SeriesKind::lower_central, 3);
  CHECK_FALSE(lc.factors);
  CHECK_FALSE(lc.bounded);
  auto triv = Group::from_presentation(parse_presentation("group T\ngens 0\nend\n"));
  auto constant = make_hom(g, triv, std::vector<Elem>(g->generators().size(), 0));
  for (auto kind : {SeriesKind::lower_central, SeriesKind::derived, SeriesKind::lower_p_central})
    for (std::size_t n = 1; n <= 4; ++n) {
      auto s = series_factor_criterion(constant, kind, n, 3);
      CHECK(s.factors);
      CHECK(s.bounded);
    }
}

TEST_CASE("induced automorphisms") {
  auto g = grp("27.3");
  auto pi = quotient(derived_subgroup(whole_group(g)));
  auto id = induced_automorphism(pi.projection, identity_hom(g));
  for (Elem x = 0; x < pi.group->order(); ++x) CHECK(id(x) == x);
  // G' is characteristic, so every automorphism descends
  auto autos = detail::all_automorphisms(g);
  CHECK(autos.size() == 432);
  for (const auto& s : autos) {
    auto hat = induced_automorphism(pi.projection, s);
    CHECK(is_automorphism(hat));
    for (Elem x = 0; x < g->order(); ++x) CHECK(hat(pi.projection(x)) == pi.projection(s(x)));
  }
  // inner automorphism of Q8 by i through Q8 -> Q8/<-1>
  Q8toV4 h;
  std::vector<Elem> m(8);
  for (Elem x = 0; x < 8; ++x) m[x] = h.q->conj(x, h.i);
  GroupHomomorphism inner(h.q, h.q, m);
  REQUIRE(is_automorphism(inner));
  auto z = quotient(closure(h.q, std::vector<Elem>{h.m}));
  auto hat = induced_automorphism(z.projection, inner);
  for (Elem x = 0; x < 4; ++x) CHECK(hat(x) == x);
}

TEST_CASE("generator-inverting automorphisms") {
  auto a = grp("27.2");
  std::vector<Elem> inv(a->order());
  for (Elem x = 0; x < a->order(); ++x) inv[x] = a->inv(x);
  CHECK(is_generator_inverting(GroupHomomorphism(a, a, inv)));
  auto g = grp("27.3");
  CHECK_FALSE(is_generator_inverting(identity_hom(g)));
  auto pi = quotient(derived_subgroup(whole_group(g)));
  std::size_t found = 0;
  for (const auto& s : detail::all_automorphisms(g)) {
    if (!is_generator_inverting(s)) continue;
    ++found;
    auto hat = induced_automorphism(pi.projection, s);
    for (Elem c = 0; c < pi.group->order(); ++c) CHECK(hat(c) == pi.group->inv(c));
  }
  CHECK(found > 0);
}
