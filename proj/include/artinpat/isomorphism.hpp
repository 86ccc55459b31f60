#pragma once

#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "artinpat/abelian.hpp"
#include "artinpat/hom.hpp"

namespace apat {

inline constexpr std::size_t kIsoBound = 3500;

struct IsoVerdict {
  bool isomorphic = false;
  std::optional<GroupHomomorphism> map;  // A -> B when isomorphic
  std::string reason;                    // refutation summary otherwise
};

namespace detail {

struct ElementProfile {
  std::size_t order;
  std::size_t centralizer;
  bool in_frattini;
  friend bool operator==(const ElementProfile&, const ElementProfile&) = default;
  friend auto operator<=>(const ElementProfile&, const ElementProfile&) = default;
};

inline std::vector<ElementProfile> profiles(const GroupPtr& g, const Subgroup& frat) {
  std::vector<ElementProfile> out(g->order());
  for (Elem x = 0; x < g->order(); ++x) {
    std::size_t c = 0;
    for (Elem y = 0; y < g->order(); ++y)
      if (g->mul(x, y) == g->mul(y, x)) ++c;
    out[x] = {g->element_order(x), c, frat.contains(x)};
  }
  return out;
}

// Frattini subgroup for p-groups (G^p G'), else trivial.
inline Subgroup frattini_like(const GroupPtr& g) {
  auto p = prime_of_power(g->order());
  if (!p) return trivial_subgroup(g);
  auto s = series(g, SeriesKind::lower_p_central, static_cast<long>(p));
  return s.size() > 1 ? s[1] : trivial_subgroup(g);
}

inline std::vector<Elem> small_generating_set(const GroupPtr& g, const Subgroup& frat, const std::vector<ElementProfile>& prof) {
  std::vector<Elem> cand(g->order());
  std::iota(cand.begin(), cand.end(), Elem{0});
  // high order and small centralizer first: fewer candidate images later
  std::stable_sort(cand.begin(), cand.end(), [&](Elem a, Elem b) {
    if (prof[a].order != prof[b].order) return prof[a].order > prof[b].order;
    return prof[a].centralizer < prof[b].centralizer;
  });
  std::vector<Elem> gens;
  std::vector<Elem> with(frat.generators().begin(), frat.generators().end());
  Subgroup cur = closure(g, with);
  for (Elem x : cand) {
    if (cur.whole()) break;
    if (cur.contains(x)) continue;
    gens.push_back(x);
    with.push_back(x);
    cur = closure(g, with);
  }
  return gens;
}

}  // namespace detail

inline IsoVerdict is_isomorphic_small(const GroupPtr& a, const GroupPtr& b) {
  IsoVerdict v;
  if (a->order() != b->order()) {
    v.reason = "orders differ (" + std::to_string(a->order()) + " vs " + std::to_string(b->order()) + ")";
    return v;
  }
  if (a->order() > kIsoBound) throw BoundExceeded("isomorphism test limited to order " + std::to_string(kIsoBound));
  auto fa = detail::frattini_like(a);
  auto fb = detail::frattini_like(b);
  auto pa = detail::profiles(a, fa);
  auto pb = detail::profiles(b, fb);
  {
    std::map<detail::ElementProfile, std::size_t> ha, hb;
    for (auto& x : pa) ++ha[x];
    for (auto& x : pb) ++hb[x];
    if (ha != hb) {
      std::map<std::size_t, std::size_t> oa, ob;
      for (auto& x : pa) ++oa[x.order];
      for (auto& x : pb) ++ob[x.order];
      v.reason = oa != ob ? "element order statistics differ" : "centralizer or Frattini statistics differ";
      return v;
    }
  }
  auto gens = detail::small_generating_set(a, fa, pa);
  if (gens.size() > 3) throw PreconditionError("isomorphism test needs a generating set of at most 3 elements");
  if (gens.empty()) {
    v.isomorphic = true;
    v.map = identity_hom(a);
    return v;
  }
  const std::size_t d = gens.size();
  std::vector<std::vector<Elem>> cand(d);
  for (std::size_t i = 0; i < d; ++i)
    for (Elem y = 0; y < b->order(); ++y)
      if (pb[y] == pa[gens[i]]) cand[i].push_back(y);

  // cheap pairwise invariants
  auto pair_sig = [](const Group& g, Elem x, Elem y) {
    return std::array<std::size_t, 3>{g.element_order(g.mul(x, y)), g.element_order(g.commutator(x, y)), g.element_order(g.mul(x, g.inv(y)))};
  };
  std::vector<std::vector<std::array<std::size_t, 3>>> want(d, std::vector<std::array<std::size_t, 3>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) want[i][j] = pair_sig(*a, gens[i], gens[j]);

  const std::size_t N = a->order();
  std::vector<Elem> map(N);
  std::vector<std::uint32_t> stamp(N, 0), seen_b(N, 0);
  std::uint32_t epoch = 0;
  std::vector<Elem> queue;
  queue.reserve(N);
  std::vector<Elem> img(d);

  auto attempt = [&]() -> bool {
    ++epoch;
    queue.clear();
    queue.push_back(0);
    map[0] = 0;
    stamp[0] = epoch;
    seen_b[0] = epoch;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Elem x = queue[qi];
      for (std::size_t k = 0; k < d; ++k) {
        Elem y = a->mul(x, gens[k]);
        Elem w = b->mul(map[x], img[k]);
        if (stamp[y] != epoch) {
          if (seen_b[w] == epoch) return false;  // not injective
          stamp[y] = epoch;
          seen_b[w] = epoch;
          map[y] = w;
          queue.push_back(y);
        } else if (map[y] != w) {
          return false;
        }
      }
    }
    return queue.size() == N;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == d) return attempt();
    for (Elem y : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = pair_sig(*b, y, img[j]) == want[i][j];
      if (!ok) continue;
      img[i] = y;
      if (search(i + 1)) return true;
    }
    return false;
  };
  if (search(0)) {
    v.isomorphic = true;
    v.map = GroupHomomorphism(a, b, std::vector<Elem>(map.begin(), map.end()));
  } else {
    v.reason = "no generator-image tuple extends to an isomorphism";
  }
  return v;
}

}  // namespace apat
