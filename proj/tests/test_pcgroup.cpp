#include "support.hpp"

using namespace apat;
using namespace apat::test;

namespace {

constexpr std::string_view kQ8 = R"(group Q8
gens 3
orders 2 2 2
pow 1 = g3
pow 2 = g3
conj 2 1 = g2 g3
end
)";

}  // namespace

TEST_CASE("parse: Klein four from two free generators of order 2") {
  auto p = parse_presentation("group V\ngens 2\norders 2 2\nend\n");
  REQUIRE(p.rank() == 2);
  auto g = Group::from_presentation(p);
  CHECK(g->order() == 4);
  CHECK(is_abelian(g));
  CHECK(is_isomorphic_small(g, grp("4.2")).isomorphic);
}

TEST_CASE("parse: quaternion source is accepted and matches the catalog table") {
  auto p = parse_presentation(kQ8);
  auto rep = check_consistency(p);
  CHECK(rep.consistent);
  CHECK(rep.claimed_order == 8);
  auto g = Group::from_presentation(p);
  auto cat = grp("8.4");
  REQUIRE(g->order() == 8);
  // same presentation as the catalog export, so the tables agree id for id
  for (Elem x = 0; x < 8; ++x)
    for (Elem y = 0; y < 8; ++y) CHECK(g->mul(x, y) == cat->mul(x, y));
}

TEST_CASE("parse: index-ordering violation is reported with a position") {
  try {
    parse_presentation("group X\ngens 3\norders 2 2 2\nconj 2 3 = g2\nend\n");
    FAIL("accepted a conjugate relation with j < i");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 6);
    CHECK(std::string(e.what()).find("j > i") != std::string::npos);
  }
}

TEST_CASE("parse: right-hand sides may only use larger generators") {
  CHECK_THROWS_AS(parse_presentation("group X\ngens 2\norders 2 2\npow 2 = g1\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("group X\ngens 3\norders 2 2 2\nconj 3 2 = g1\nend\n"), ParseError);
}

TEST_CASE("parse: malformed sources") {
  CHECK_THROWS_AS(parse_presentation("gens 2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("group X\ngens 2\norders 2\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("group X\ngens 2\norders 2 2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("group X\ngens 2\norders 2 1\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("group X\ngens 2\norders 2 2\npow 3 = g2\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("group X\ngens 2\norders 2 2\nfrob 1\nend\n"), ParseError);
  try {
    parse_presentation("group X\ngens 2\norders 2 2\npow 1 = g2^x\nend\n");
    FAIL("accepted a bad exponent");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("parse and print round-trip for every catalog presentation") {
  for (const auto& e : catalog()) {
    auto again = parse_presentation(to_text(e.presentation));
    CHECK(again.orders == e.presentation.orders);
    CHECK(again.power == e.presentation.power);
    CHECK(again.conj == e.presentation.conj);
  }
}

TEST_CASE("collect: empty word and a single power relation") {
  auto p = parse_presentation("group C4\ngens 2\norders 2 2\npow 1 = g2\nend\n");
  Collector c(p);
  CHECK(c.collect({}) == Exponents{0, 0});
  CHECK(c.collect({{0, 2}}) == Exponents{0, 1});
  CHECK(c.collect({{0, 4}}) == Exponents{0, 0});
  CHECK(c.collect({{0, -1}}) == Exponents{1, 1});
}

TEST_CASE("collect: b a b in the quaternion group") {
  Collector c(parse_presentation(kQ8));
  // j i j = i, not -i
  CHECK(c.collect({{1, 1}, {0, 1}, {1, 1}}) == c.collect({{0, 1}}));
  CHECK(c.collect({{1, 1}, {0, 1}, {1, 1}}) != c.collect({{0, 1}, {2, 1}}));
  CHECK(c.collect({{1, 1}, {0, 1}}) == c.collect({{0, 1}, {1, 1}, {2, 1}}));
}

TEST_CASE("collect: every word of length <= 3 agrees with the multiplication table") {
  auto g = grp("8.4");
  const Collector& c = *g->collector();
  std::vector<Syllable> letters;
  for (int k = 0; k < 3; ++k)
    for (long e : {-1L, 1L}) letters.push_back({k, e});
  auto value = [&](const Word& w) {
    Elem acc = 0;
    for (const auto& s : w) acc = g->mul(acc, s.exp > 0 ? g->generators()[s.gen] : g->inv(g->generators()[s.gen]));
    return acc;
  };
  std::size_t n = 0;
  std::vector<Word> words{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<Word> next;
    for (const auto& w : words)
      for (const auto& l : letters) {
        auto v = w;
        v.push_back(l);
        next.push_back(v);
      }
    for (const auto& w : next) {
      CHECK(g->from_exponents(c.collect(w)) == value(w));
      ++n;
    }
    words = next;
  }
  CHECK(n == 6 + 36 + 216);
}

TEST_CASE("collect: exponents stay in range and normal forms are unique") {
  for (const auto& id : ids_up_to(729)) {
    auto g = grp(id);
    const auto* c = g->collector();
    REQUIRE(c);
    std::set<Exponents> seen;
    for (Elem x = 0; x < g->order(); ++x) {
      auto e = g->exponents(x);
      for (int k = 0; k < c->rank(); ++k) {
        CHECK(e[k] >= 0);
        CHECK(e[k] < c->orders()[k]);
      }
      seen.insert(e);
      CHECK(g->from_exponents(c->collect(Collector::to_word(e))) == x);
    }
    CHECK(seen.size() == g->order());
  }
}

TEST_CASE("enumerate: trivial, extraspecial and large catalog orders") {
  auto t = Group::from_presentation(parse_presentation("group T\ngens 0\nend\n"));
  CHECK(t->order() == 1);
  CHECK(grp("27.3")->order() == 27);
  CHECK(grp("2187.77")->order() == 2187);
}

TEST_CASE("consistency: commuting relations only") {
  auto rep = check_consistency(parse_presentation("group A\ngens 3\norders 3 3 5\nend\n"));
  CHECK(rep.consistent);
  CHECK(rep.claimed_order == 45);
}

TEST_CASE("consistency: corrupted quaternion power relations") {
  // a^2 = 1 instead of a^2 = c gives the dihedral group, consistent but not Q8
  auto d8 = parse_presentation(std::string(kQ8).replace(std::string(kQ8).find("pow 1 = g3"), 10, "pow 1 = g3^0"));
  auto rep = check_consistency(d8);
  CHECK(rep.consistent);
  CHECK_FALSE(is_isomorphic_small(Group::from_presentation(d8), grp("8.4")).isomorphic);
  // b^a = b c with a^2 = b: a^2 must commute with a, but here it does not
  auto bad = parse_presentation("group B\ngens 3\norders 2 2 2\npow 1 = g2\nconj 2 1 = g2 g3\nend\n");
  auto r2 = check_consistency(bad);
  CHECK_FALSE(r2.consistent);
  CHECK_FALSE(r2.witness.empty());
  CHECK_THROWS_AS(Group::from_presentation(bad), InconsistentPresentation);
}

TEST_CASE("consistency: the enumeration bound is enforced") {
  auto p = parse_presentation("group Big\ngens 3\norders 7 7 7\nend\n");
  CHECK_THROWS_AS(check_consistency(p, 100), BoundExceeded);
  CHECK_THROWS_AS(Group::from_presentation(p, 100), BoundExceeded);
}

TEST_CASE("every catalog presentation is consistent with the order in its id") {
  for (const auto& e : catalog()) {
    auto rep = check_consistency(e.presentation);
    CHECK(rep.consistent);
    CHECK(rep.claimed_order == e.order);
  }
}
