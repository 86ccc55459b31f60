#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "artinpat/isomorphism.hpp"
#include "artinpat/tree.hpp"

namespace apat {

struct LawResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;
  std::string witness;  // first failure

  LawResult() = default;
  explicit LawResult(std::string n) : name(std::move(n)) {}

  bool ok() const noexcept { return failures == 0; }

  void check(bool cond, const std::string& what) {
    ++checks;
    if (cond) return;
    if (!failures) witness = what;
    ++failures;
  }

  template <class F>
  void check_lazy(bool cond, F&& what) {
    ++checks;
    if (cond) return;
    if (!failures) witness = what();
    ++failures;
  }
};

struct LawOptions {
  std::size_t exhaustive_bound = 729;  // larger groups are sampled
  std::size_t samples = 10000;
  std::size_t transversals = 20;
  std::size_t random_maps = 4;
  std::size_t lattice_bound = 243;     // subgroup-lattice identities
  std::uint64_t seed = 0x5eed;
};

namespace detail {

struct PairSampler {
  const Group& g;
  bool exhaustive;
  std::size_t samples;
  std::mt19937_64& rng;

  template <class F>
  void pairs(F&& f) {
    const Elem n = static_cast<Elem>(g.order());
    if (exhaustive) {
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) f(x, y);
      return;
    }
    std::uniform_int_distribution<Elem> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) f(pick(rng), pick(rng));
  }
};


// proper family members with their nested pairs K < H
inline std::vector<std::pair<std::size_t, std::size_t>> nested_pairs(const std::vector<Subgroup>& fam) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t h = 0; h < fam.size(); ++h)
    for (std::size_t k = 0; k < fam.size(); ++k)
      if (h != k && fam[h].contains(fam[k])) out.emplace_back(h, k);
  return out;
}

}  // namespace detail

// Latin square, associativity, inverses and the presentation's order.
inline std::vector<LawResult> engine_laws(const GroupPtr& g, std::optional<std::size_t> expected_order = std::nullopt) {
  const Group& G = *g;
  const Elem n = static_cast<Elem>(G.order());
  LawResult latin{"latin-square"}, assoc{"associativity"}, inv{"inverses"}, order{"consistency-order"};
  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t epoch = 0;
  for (Elem a = 0; a < n; ++a) {
    ++epoch;
    bool ok = true;
    for (Elem b = 0; b < n && ok; ++b) {
      Elem c = G.mul(a, b);
      ok = c < n && mark[c] != epoch;
      if (ok) mark[c] = epoch;
    }
    latin.check_lazy(ok, [&] { return "row " + G.label(a) + " repeats"; });
  }
  for (Elem b = 0; b < n; ++b) {
    ++epoch;
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) {
      Elem c = G.mul(a, b);
      ok = c < n && mark[c] != epoch;
      if (ok) mark[c] = epoch;
    }
    latin.check_lazy(ok, [&] { return "column " + G.label(b) + " repeats"; });
  }
  // (x s) y = x (s y) for generators s already forces full associativity
  auto gens = G.generators();
  for (Elem s : gens)
    for (Elem x = 0; x < n; ++x) {
      Elem xs = G.mul(x, s);
      bool ok = true;
      Elem bad = 0;
      for (Elem y = 0; y < n && ok; ++y)
        if (G.mul(xs, y) != G.mul(x, G.mul(s, y))) {
          ok = false;
          bad = y;
        }
      assoc.check_lazy(ok, [&] { return "(x s) y != x (s y) for x = " + G.label(x) + ", s = " + G.label(s) + ", y = " + G.label(bad); });
    }
  assoc.check(closure(g, gens).whole(), "generators do not generate the group");
  for (Elem x = 0; x < n; ++x) {
    inv.check_lazy(G.mul(x, G.inv(x)) == 0 && G.mul(G.inv(x), x) == 0, [&] { return "bad inverse of " + G.label(x); });
    inv.check_lazy(G.mul(x, 0) == x && G.mul(0, x) == x, [&] { return "identity fails on " + G.label(x); });
  }
  if (G.backend() == Backend::pc_collection) {
    auto rep = check_consistency(G.collector()->presentation());
    order.check(rep.consistent, "inconsistent: " + rep.witness);
    order.check(rep.claimed_order == G.order(), "claimed order differs from the element count");
  }
  if (expected_order) order.check(G.order() == *expected_order, "order " + std::to_string(G.order()) + " != " + std::to_string(*expected_order));
  return {latin, assoc, inv, order};
}

// The transfer calculus on every member of the layer system.
inline std::vector<LawResult> transfer_laws(const GroupPtr& g, const LawOptions& opt = {}) {
  const Group& G = *g;
  const Elem n = static_cast<Elem>(G.order());
  std::mt19937_64 rng(opt.seed ^ G.order());
  const bool exhaustive = G.order() <= opt.exhaustive_bound;
  detail::PairSampler sampler{G, exhaustive, opt.samples, rng};
  auto sys = subgroup_layers(g);
  auto fam = sys.family();

  LawResult forms{"three-form agreement"}, indep{"transversal independence"}, hom{"homomorphism law"}, comp{"composition"},
      wreath{"monomial wreath law"}, faithful{"monomial faithfulness"}, stab{"stabilizer law"}, inverse{"inverse transversal"},
      kernel{"kernel contains G'"};
  std::vector<ArtinTransfer> ts;
  ts.reserve(fam.size());
  for (const auto& h : fam) ts.emplace_back(left_transversal(h));

  for (std::size_t m = 0; m < fam.size(); ++m) {
    const auto& t = ts[m];
    const auto& q = *t.target();
    const std::string where = "H = member " + std::to_string(m) + " (index " + std::to_string(fam[m].index()) + ")";
    kernel.check(t.kernel().contains(sys.derived), where);
    // (a) definitional, cycle and normal forms
    for (Elem x = 0; x < n; ++x) {
      Elem d = t(x);
      forms.check_lazy(transfer_cycle_form(t, x) == d && transfer_normal_form(t, x) == d, [&] { return where + ", x = " + G.label(x); });
    }
    // (b) random left and right transversals
    for (std::size_t r = 0; r < opt.transversals; ++r) {
      for (Side side : {Side::left, Side::right}) {
        auto tr = random_transversal(fam[m], side, rng);
        bool ok = true;
        Elem bad = 0;
        if (exhaustive) {
          for (Elem x = 0; x < n && ok; ++x)
            if (t.evaluate(tr, x) != t(x)) ok = false, bad = x;
        } else {
          std::uniform_int_distribution<Elem> pick(0, n - 1);
          for (std::size_t s = 0; s < opt.samples / opt.transversals && ok; ++s) {
            Elem x = pick(rng);
            if (t.evaluate(tr, x) != t(x)) ok = false, bad = x;
          }
        }
        indep.check_lazy(ok, [&] { return where + (side == Side::left ? ", left" : ", right") + " transversal, x = " + G.label(bad); });
      }
    }
    // (c) homomorphism
    {
      std::size_t bad = 0;
      std::string w;
      sampler.pairs([&](Elem x, Elem y) {
        if (t(G.mul(x, y)) != q.mul(t(x), t(y)) && !bad++) w = where + ", x = " + G.label(x) + ", y = " + G.label(y);
      });
      hom.check(bad == 0, w);
    }
    // (e) monomial representation
    {
      const auto& lt = t.transversal();
      std::vector<MonomialImage> img(n);
      for (Elem x = 0; x < n; ++x) img[x] = monomial_rep(lt, x);
      std::size_t bad = 0;
      std::string w;
      sampler.pairs([&](Elem x, Elem y) {
        if (!(wreath_mul(G, Side::left, img[x], img[y]) == img[G.mul(x, y)]) && !bad++) w = where + ", x = " + G.label(x) + ", y = " + G.label(y);
      });
      wreath.check(bad == 0, w);
      auto sorted = img;
      std::sort(sorted.begin(), sorted.end(), [](const MonomialImage& a, const MonomialImage& b) { return std::tie(a.perm, a.monomials) < std::tie(b.perm, b.monomials); });
      bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      faithful.check(distinct, where);
      // right transversal law and the inverse-transversal relation
      auto rt = inverted(lt);
      bool ok = true;
      Elem badx = 0;
      for (Elem x = 0; x < n && ok; ++x) {
        auto w2 = monomial_rep(rt, G.inv(x));
        if (w2.perm != img[x].perm) ok = false;
        for (std::size_t i = 0; ok && i < lt.size(); ++i)
          if (w2.monomials[i] != G.inv(img[x].monomials[i])) ok = false;
        if (!ok) badx = x;
      }
      inverse.check_lazy(ok, [&] { return where + ", x = " + G.label(badx); });
      std::size_t badr = 0;
      std::string wr;
      std::vector<MonomialImage> rimg(n);
      for (Elem x = 0; x < n; ++x) rimg[x] = monomial_rep(rt, x);
      sampler.pairs([&](Elem x, Elem y) {
        if (!(wreath_mul(G, Side::right, rimg[x], rimg[y]) == rimg[G.mul(x, y)]) && !badr++) wr = where + " (right), x = " + G.label(x) + ", y = " + G.label(y);
      });
      wreath.check(badr == 0, wr);
    }
  }
  // (d) composition and (f) stabilizer law over nested members
  for (auto [hi, ki] : detail::nested_pairs(fam)) {
    const std::string where = "H = member " + std::to_string(hi) + ", K = member " + std::to_string(ki);
    auto c = compose_transfers(fam[hi], fam[ki]);
    comp.check(c.holds, where + ", " + c.witness);
    if (fam[hi].whole() && fam[ki].whole()) continue;
    StabilizerRep rep(fam[hi], fam[ki]);
    std::vector<Permutation> flat(n);
    std::vector<StabilizerImage> gam(n);
    bool pointwise = true;
    for (Elem x = 0; x < n; ++x) {
      gam[x] = rep(x);
      flat[x] = gam[x].flat();
      if (flat[x] != rep.direct(x)) pointwise = false;
    }
    stab.check(pointwise, where + ": flat action differs from the coset action");
    std::size_t bad = 0;
    std::string w;
    sampler.pairs([&](Elem x, Elem y) {
      auto s = stabilizer_mul(gam[x], gam[y]);
      if (s.flat() != flat[G.mul(x, y)] && !bad++) w = where + ", x = " + G.label(x) + ", y = " + G.label(y);
    });
    stab.check(bad == 0, w);
  }
  return {forms, indep, hom, comp, wreath, faithful, stab, inverse, kernel};
}

// Generators for the closed transfer formulas: x, y with G = <x, y>,
// x of order p^2 and y of order p modulo G' in the (p^2,p) case.
struct FormulaGenerators {
  Elem x = 0;
  Elem y = 0;
};

inline std::optional<FormulaGenerators> formula_generators(const GroupPtr& g, const SubgroupLayerSystem& sys) {
  if (sys.shape == LayerShape::other) return std::nullopt;
  if (sys.shape == LayerShape::pp)
    if (auto dg = designated_generators(g, sys)) return FormulaGenerators{dg->x, dg->y};
  const auto& d = sys.derived;
  const long p = static_cast<long>(sys.p);
  auto with = [&](std::vector<Elem> e) {
    e.insert(e.end(), d.generators().begin(), d.generators().end());
    return closure(g, e);
  };
  for (Elem x = 1; x < g->order(); ++x) {
    if (d.contains(x)) continue;
    if (sys.shape == LayerShape::p2p && d.contains(g->pow(x, p))) continue;
    auto ux = with({x});
    for (Elem y = 1; y < g->order(); ++y) {
      if (ux.contains(y)) continue;
      if (sys.shape == LayerShape::p2p && !d.contains(g->pow(y, p))) continue;
      if (with({x, y}).whole()) return FormulaGenerators{x, y};
    }
  }
  return std::nullopt;
}

// Closed forms for the transfers of groups with G/G' of type (p,p) or (p^2,p).
inline LawResult formula_laws(const GroupPtr& g) {
  LawResult r{"closed transfer formulas"};
  auto sys = subgroup_layers(g);
  auto fg = formula_generators(g, sys);
  if (!fg) {
    ++r.skipped;
    return r;
  }
  const Group& G = *g;
  const long p = static_cast<long>(sys.p);
  const Elem x = fg->x, y = fg->y;
  auto with = [&](std::vector<Elem> e) {
    e.insert(e.end(), sys.derived.generators().begin(), sys.derived.generators().end());
    return closure(g, e);
  };
  auto prod = [&](std::vector<Elem> v) {
    Elem acc = 0;
    for (Elem e : v) acc = G.mul(acc, e);
    return acc;
  };
  // prod_{k<p} t^-k h t^k
  auto trace = [&](Elem h, Elem t) {
    std::vector<Elem> f;
    for (long k = 0; k < p; ++k) f.push_back(G.conj(h, G.pow(t, k)));
    return prod(f);
  };
  auto expect = [&](const std::string& label, const Subgroup& h, Elem arg, Elem value) {
    auto t = artin_transfer(h);
    r.check(t(arg) == t.project(value), label);
  };
  if (sys.shape == LayerShape::pp) {
    for (long i = 1; i <= p + 1; ++i) {
      Elem h = i == 1 ? y : G.mul(x, G.pow(y, i - 2));
      Elem t = i == 1 ? x : y;
      auto hi = with({h});
      const std::string tag = "H_" + std::to_string(i);
      expect(tag + ": inner transfer as trace", hi, h, trace(h, t));
      expect(tag + ": inner transfer as two p-th powers", hi, h, G.mul(G.pow(G.mul(h, G.inv(t)), p), G.pow(t, p)));
      expect(tag + ": outer transfer", hi, t, G.pow(t, p));
    }
    return r;
  }
  const Elem xp = G.pow(x, p);
  for (long i = 1; i <= p + 1; ++i) {
    const std::string tag = "H_1," + std::to_string(i);
    if (i <= p) {
      Elem h = G.mul(x, G.pow(y, i - 1));
      auto hi = with({h});
      expect(tag + ": inner transfer", hi, h, trace(h, y));
      expect(tag + ": inner transfer as two p-th powers", hi, h, G.mul(G.pow(G.mul(h, G.inv(y)), p), G.pow(y, p)));
      expect(tag + ": outer transfer", hi, y, G.pow(y, p));
    } else {
      auto hi = with({y, xp});
      expect(tag + ": inner transfer of y", hi, y, trace(y, x));
      expect(tag + ": inner transfer of x^p", hi, xp, trace(xp, x));
      expect(tag + ": outer transfer", hi, x, xp);
    }
  }
  for (long i = 1; i <= p + 1; ++i) {
    const std::string tag = "H_2," + std::to_string(i);
    Elem u = i == 1 ? y : i <= p ? G.mul(xp, G.pow(y, i - 1)) : xp;
    Elem t = x;
    Elem w = i <= p ? xp : y;
    auto hi = with({u});
    std::vector<Elem> f;
    for (long j = 0; j < p; ++j)
      for (long k = 0; k < p; ++k) f.push_back(G.conj(u, G.mul(G.pow(w, j), G.pow(t, k))));
    expect(tag + ": inner transfer", hi, u, prod(f));
    if (i <= p) {
      expect(tag + ": outer transfer", hi, t, G.pow(t, p * p));
    } else {
      std::vector<Elem> e;
      for (long j = 0; j < p; ++j) e.push_back(G.conj(G.pow(t, p), G.pow(w, j)));
      expect(tag + ": outer transfer of x", hi, t, prod(e));
    }
    expect(tag + ": outer transfer of w", hi, w, trace(G.pow(w, p), t));
  }
  return r;
}

namespace detail {

inline std::vector<GroupHomomorphism> all_automorphisms(const GroupPtr& g) {
  auto frat = frattini_like(g);
  auto gens = small_generating_set(g, frat, profiles(g, frat));
  std::vector<GroupHomomorphism> out;
  std::vector<Elem> img(gens.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == gens.size()) {
      if (auto h = try_make_hom(g, g, gens, img); h && h->bijective()) out.push_back(std::move(*h));
      return;
    }
    for (Elem e = 0; e < g->order(); ++e)
      if (g->element_order(e) == g->element_order(gens[i])) {
        img[i] = e;
        rec(i + 1);
      }
  };
  rec(0);
  return out;
}

inline std::vector<Subgroup> normal_subgroups(const GroupPtr& g) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(g))
    if (is_normal(s)) out.push_back(std::move(s));
  return out;
}

}  // namespace detail

// Projections from the catalog group and random quotients of it.
inline std::vector<GroupHomomorphism> test_projections(const GroupPtr& g, const LawOptions& opt, std::mt19937_64& rng) {
  std::vector<GroupHomomorphism> out;
  std::vector<ParentKind> kinds{{SeriesKind::lower_central, 0}, {SeriesKind::derived, 0}};
  if (prime_of_power(g->order())) kinds.push_back({SeriesKind::lower_p_central, 0});
  for (auto k : kinds) {
    try {
      if (auto e = parent(g, k)) out.push_back(e->projection);
    } catch (const Error&) {
    }
  }
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g->order() - 1));
  for (std::size_t i = 0; i < opt.random_maps; ++i) {
    Elem a = pick(rng);
    std::vector<Elem> gens{a};
    if (i % 2) gens.push_back(pick(rng));
    auto n = normal_closure(g, gens, g->generators());
    out.push_back(quotient(n).projection);
  }
  return out;
}

// Homomorphism machinery on projections out of g.
inline std::vector<LawResult> hom_laws(const GroupPtr& g, const LawOptions& opt = {}) {
  LawResult exist{"induced homomorphism criterion"}, lattice{"preimage and image identities"}, series_crit{"series factorization criterion"},
      natural{"transfer naturality"}, kip{"induced automorphisms"};
  std::mt19937_64 rng(opt.seed * 31 + g->order());
  auto maps = test_projections(g, opt, rng);
  const bool small = g->order() <= opt.lattice_bound;
  std::vector<Subgroup> subs_g = small ? all_subgroups(g) : std::vector<Subgroup>{};
  std::vector<Subgroup> normals_g;
  if (small)
    for (const auto& s : subs_g)
      if (is_normal(s)) normals_g.push_back(s);
  const long p = static_cast<long>(prime_of_power(g->order()));
  auto sys = subgroup_layers(g);
  auto fam = sys.family();

  for (std::size_t mi = 0; mi < maps.size(); ++mi) {
    const auto& phi = maps[mi];
    const auto& h = phi.codomain();
    const auto ker = phi.kernel();
    const std::string where = "map " + std::to_string(mi) + " onto order " + std::to_string(h->order());
    exist.check(is_multiplicative(phi) && phi.surjective(), where + " is not an epimorphism");
    // normal pairs: series members and kernels on both sides, lattices when small
    std::vector<Subgroup> us = small ? normals_g : std::vector<Subgroup>{trivial_subgroup(g), ker, sys.derived, whole_group(g)};
    std::vector<Subgroup> vs;
    for (const auto& u : us) vs.push_back(image_of(phi, u));
    vs.push_back(trivial_subgroup(h));
    vs.push_back(derived_subgroup(whole_group(h)));
    if (us.size() > 12) {
      std::shuffle(us.begin(), us.end(), rng);
      us.resize(12);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (const auto& u : us)
      for (const auto& v : vs) {
        const bool contained = v.contains(image_of(phi, u));
        const bool pre = preimage_of(phi, v).contains(u);
        exist.check(contained == pre, where + ": phi(U) <= V disagrees with U <= phi^-1(V)");
        try {
          auto ind = induced_on_quotients(phi, u, v);
          exist.check(contained, where + ": induced map built although phi(U) is not in V");
          exist.check(ind.map.kernel() == image_of(ind.source.projection, preimage_of(phi, v)), where + ": kernel of the induced map is not phi^-1(V)/U");
        } catch (const FactorizationError&) {
          exist.check(!contained, where + ": induced map refused although phi(U) <= V");
        }
      }
    if (small) {
      for (const auto& u : subs_g) lattice.check(preimage_of(phi, image_of(phi, u)) == join(u, ker), where + ": phi^-1(phi(U)) != U ker(phi)");
      for (const auto& v : all_subgroups(h)) lattice.check(image_of(phi, preimage_of(phi, v)) == intersection(phi.image(), v), where + ": phi(phi^-1(V)) != phi(G) meet V");
    } else {
      ++lattice.skipped;
    }
    for (SeriesKind k : {SeriesKind::lower_central, SeriesKind::derived, SeriesKind::lower_p_central}) {
      if (k == SeriesKind::lower_p_central && !p) continue;
      auto chain = series(g, k, p);
      if (!reaches_trivial(chain)) continue;
      for (std::size_t nn = 1; nn <= 4; ++nn)
        series_crit.check(series_factor_criterion(phi, k, nn, p).agree(), where + ": " + to_string(k) + " n = " + std::to_string(nn));
    }
    // naturality of the transfer along phi, for members containing ker(phi)
    for (const auto& u : fam) {
      if (!u.contains(ker)) continue;
      auto v = image_of(phi, u);
      auto tu = artin_transfer(u);
      auto tv = artin_transfer(v);
      bool ok = true;
      Elem bad = 0;
      for (Elem x = 0; x < g->order() && ok; ++x) {
        Elem rep = tu.target()->representative(tu(x));
        if (tv.project(phi(rep)) != tv(phi(x))) ok = false, bad = x;
      }
      natural.check_lazy(ok, [&] { return where + ": square fails at x = " + g->label(bad); });
      auto ku = tu.kernel();
      auto kv = tv.kernel();
      natural.check(kv.contains(image_of(phi, ku)), where + ": phi(ker T_U) not in ker T_V");
      if (derived_subgroup(u).contains(ker)) natural.check(image_of(phi, ku) == kv, where + ": kernels differ although ker(phi) <= U'");
    }
  }
  // automorphisms descend exactly when the kernel is invariant
  if (g->order() <= 81) {
    auto autos = detail::all_automorphisms(g);
    kip.check(!autos.empty(), "no automorphisms found");
    auto normals = detail::normal_subgroups(g);
    for (const auto& n : normals) {
      auto q = quotient(n);
      for (std::size_t a = 0; a < autos.size(); ++a) {
        const auto& s = autos[a];
        const bool invariant = image_of(s, n) == n;
        const std::string where = "automorphism " + std::to_string(a) + ", |N| = " + std::to_string(n.order());
        try {
          auto hat = induced_automorphism(q.projection, s);
          kip.check(invariant, where + ": induced although sigma(N) != N");
          kip.check(is_automorphism(hat) && is_multiplicative(hat), where + ": induced map is not an automorphism");
          bool commutes = true;
          for (Elem x = 0; x < g->order(); ++x)
            if (hat(q.projection(x)) != q.projection(s(x))) commutes = false;
          kip.check(commutes, where + ": induced map does not commute");
          if (is_generator_inverting(s)) kip.check(is_generator_inverting(hat), where + ": generator inversion lost");
        } catch (const FactorizationError&) {
          kip.check(!invariant, where + ": refused although sigma(N) = N");
        }
      }
    }
  } else {
    ++kip.skipped;
  }
  return {exist, lattice, series_crit, natural, kip};
}

// Pattern order along the parent edges of every kind.
inline std::vector<LawResult> tree_laws(const GroupPtr& g) {
  LawResult order{"pattern order along edges"}, stbpol{"stable part equals equal components"}, layers{"top and bottom layer theorems"};
  std::vector<ParentKind> kinds{{SeriesKind::lower_central, 0}, {SeriesKind::derived, 0}};
  if (prime_of_power(g->order())) kinds.push_back({SeriesKind::lower_p_central, 0});
  std::optional<ArtinPattern> child;
  for (auto k : kinds) {
    std::optional<ParentEdge> e;
    try {
      e = parent(g, k);
    } catch (const Error&) {
      continue;
    }
    if (!e) continue;
    const std::string where = to_string(k.tag) + " edge";
    auto sys = subgroup_layers(g);
    if (!child) child = pattern_from_layers(sys, g->name());
    bool comparable = true;
    for (const auto& u : sys.family())
      if (!u.contains(e->kernel)) comparable = false;
    auto lt = layer_theorems_check(g, k);
    layers.check(lt.holds(), where + ": top " + (lt.top_stable ? "stable" : "changed") + ", bottom " + (lt.bottom_changed ? "changed" : "stable") +
                                 ", rank " + (lt.p_rank_stable ? "stable" : "changed"));
    if (!comparable) {
      ++order.skipped;
      continue;
    }
    auto par = restricted_pattern(e->parent);
    auto cmp = compare_patterns(*child, par, e->projection);
    for (const auto& c : cmp.components) {
      const std::string at = where + ", layer " + std::to_string(c.layer) + " member " + std::to_string(c.child_pos + 1);
      order.check(c.tau != Relation::incomparable, at + ": targets not ordered");
      order.check(c.kappa != Relation::incomparable, at + ": kernels not ordered");
      const bool stable = derived_subgroup(child->layers[c.layer].members[c.child_pos]).contains(e->kernel);
      if (stable) {
        stbpol.check(c.tau == Relation::equal && c.kappa == Relation::equal, at + ": stable component changed");
      } else {
        stbpol.check(c.tau == Relation::strictly_precedes, at + ": polarized component without strict target precedence");
      }
    }
  }
  return {order, stbpol, layers};
}

struct LawSuite {
  std::string group;
  std::vector<LawResult> results;
  bool ok() const {
    return std::all_of(results.begin(), results.end(), [](const LawResult& r) { return r.ok(); });
  }
};

inline LawSuite verify_laws(const GroupPtr& g, const LawOptions& opt = {}, std::optional<std::size_t> expected_order = std::nullopt) {
  LawSuite s{g->name(), {}};
  auto add = [&](std::vector<LawResult> v) { s.results.insert(s.results.end(), v.begin(), v.end()); };
  add(engine_laws(g, expected_order));
  add(transfer_laws(g, opt));
  s.results.push_back(formula_laws(g));
  add(hom_laws(g, opt));
  add(tree_laws(g));
  auto mv = metabelianization_check(g);
  LawResult main{"metabelianization"};
  if (mv.metabelian) ++main.skipped;
  else main.check(mv.holds, mv.mismatches.empty() ? std::string() : mv.mismatches.front());
  s.results.push_back(main);
  return s;
}

}  // namespace apat
