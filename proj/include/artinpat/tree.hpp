#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <vector>

#include "artinpat/pattern.hpp"

namespace apat {

struct ParentKind {
  SeriesKind tag = SeriesKind::lower_central;
  long p = 0;  // lower-p-central only

  static ParentKind parse(std::string_view s) {
    if (s == "lower-central") return {SeriesKind::lower_central, 0};
    if (s == "derived") return {SeriesKind::derived, 0};
    // lower-p-central or lower-p-central:<p>
    constexpr std::string_view pc = "lower-p-central";
    if (s.substr(0, pc.size()) == pc) {
      if (s.size() == pc.size()) return {SeriesKind::lower_p_central, 0};
      if (s[pc.size()] == ':') {
        long v = 0;
        auto rest = s.substr(pc.size() + 1);
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
        if (ec == std::errc{} && ptr == rest.data() + rest.size() && v >= 2) return {SeriesKind::lower_p_central, v};
      }
    }
    throw Error("unknown parent kind '" + std::string(s) + "' (expected lower-central, derived or lower-p-central[:p])");
  }

  std::string to_string() const { return tag == SeriesKind::lower_p_central && p ? apat::to_string(tag) + ":" + std::to_string(p) : apat::to_string(tag); }
};

struct ParentEdge {
  GroupPtr parent;
  GroupHomomorphism projection;
  Subgroup kernel;
};

// Quotient by the last non-trivial member of the chosen series. nullopt for an
// abelian group under the lower-central and derived kinds.
inline std::optional<ParentEdge> parent(const GroupPtr& g, ParentKind kind) {
  if (g->order() == 1) throw RootReached("the trivial group has no parent");
  long p = kind.p;
  if (kind.tag == SeriesKind::lower_p_central && p == 0) {
    p = static_cast<long>(prime_of_power(g->order()));
    if (!p) throw PreconditionError("lower p-central parent needs a p-group");
  }
  auto chain = series(g, kind.tag, p);
  if (!reaches_trivial(chain)) throw PreconditionError(to_string(kind.tag) + " series of '" + g->name() + "' does not reach the trivial group");
  if (chain.size() == 2 && kind.tag != SeriesKind::lower_p_central) return std::nullopt;
  const auto& n = chain[chain.size() - 2];
  auto q = quotient(n);
  return ParentEdge{q.group, std::move(q.projection), n};
}

struct StbPol {
  std::vector<std::size_t> stable;     // 1-based positions
  std::vector<std::size_t> polarized;
};

inline std::string index_set(const std::vector<std::size_t>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// i stable iff ker(pi) <= U_i'.
inline StbPol stb_pol(const Subgroup& ker, const std::vector<Subgroup>& members) {
  StbPol out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto d = derived_subgroup(members[i]);
    (d.contains(ker) ? out.stable : out.polarized).push_back(i + 1);
  }
  return out;
}

enum class Relation { equal, strictly_precedes, incomparable };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::strictly_precedes: return "strictly-precedes";
    case Relation::incomparable: return "incomparable";
  }
  return "?";
}

struct ComponentComparison {
  std::size_t layer = 0;
  std::size_t child_pos = 0;   // 0-based in the child's layer
  std::size_t parent_pos = 0;  // 0-based in the parent's layer
  Relation tau = Relation::equal;    // parent target vs child target
  Relation kappa = Relation::equal;  // pi(child kernel) vs parent kernel
};

struct PatternComparison {
  std::vector<ComponentComparison> components;

  // everything ordered the way the theory predicts
  bool consistent() const {
    for (const auto& c : components)
      if (c.tau == Relation::incomparable || c.kappa == Relation::incomparable) return false;
    return true;
  }

  std::vector<const ComponentComparison*> layer(std::size_t l) const {
    std::vector<const ComponentComparison*> out;
    for (const auto& c : components)
      if (c.layer == l) out.push_back(&c);
    return out;
  }
};

// Components matched by U -> pi(U); pi must have its kernel inside every member.
inline PatternComparison compare_patterns(const ArtinPattern& child, const ArtinPattern& par, const GroupHomomorphism& pi) {
  auto ker = pi.kernel();
  PatternComparison out;
  if (child.layers.size() != par.layers.size()) throw PreconditionError("patterns have different layer counts");
  for (std::size_t l = 0; l < child.layers.size(); ++l) {
    const auto& a = child.layers[l];
    const auto& b = par.layers[l];
    for (std::size_t i = 0; i < a.members.size(); ++i) {
      if (!a.members[i].contains(ker)) throw PreconditionError("comparability fails: ker(pi) is not contained in family member " + std::to_string(l) + "." + std::to_string(i + 1));
      auto j = detail::position(b.members, image_of(pi, a.members[i]));
      if (!j) throw PreconditionError("image of a family member is missing from the parent's family");
      ComponentComparison c{l, i, *j, Relation::equal, Relation::equal};
      const auto& tu = a.ttt[i];
      const auto& tv = b.ttt[*j];
      c.tau = tu == tv ? Relation::equal : type_precedes(tv, tu) ? Relation::strictly_precedes : Relation::incomparable;
      auto ik = image_of(pi, a.kernels[i]);
      const auto& pk = b.kernels[*j];
      c.kappa = ik == pk ? Relation::equal : pk.contains(ik) ? Relation::strictly_precedes : Relation::incomparable;
      out.components.push_back(c);
    }
  }
  return out;
}

// The paper's fixed ordering of the maximal subgroups, U_1 = <y,G'>,
// U_i = <x y^{i-2}, G'>, from the generator pair (x, y) it prescribes for
// metabelian groups with G/G' of type (p,p). Ties are broken by least ids.
struct DesignatedGenerators {
  Elem x = 0;
  Elem y = 0;
  std::vector<std::size_t> order;  // order[i] = canonical position of U_{i+1}
};

inline std::optional<DesignatedGenerators> designated_generators(const GroupPtr& g, const SubgroupLayerSystem& sys) {
  if (sys.shape != LayerShape::pp) return std::nullopt;
  auto lc = series(g, SeriesKind::lower_central);
  if (!reaches_trivial(lc)) return std::nullopt;
  const std::size_t c = lc.size() - 1;
  const std::size_t m = c + 1;
  std::size_t n = 0;
  for (auto o = g->order(); o > 1; o /= sys.p) ++n;
  const std::size_t cc = n - c;
  if (m < 4) return std::nullopt;
  const auto& d = sys.derived;
  Subgroup chi;
  bool need_gamma3 = false;
  if (cc == 1) {
    chi = two_step_centralizer(g, 2);
  } else {
    if (sys.p != 3) return std::nullopt;
    std::size_t s = 0;
    for (std::size_t j = 2; j <= m - 1; ++j) {
      chi = two_step_centralizer(g, j);
      if (chi.order() > d.order()) {
        s = j;
        break;
      }
    }
    if (!s) return std::nullopt;
    need_gamma3 = true;
  }
  const auto& g3 = lc[2];
  const Subgroup g4 = lc.size() > 3 ? lc[3] : trivial_subgroup(g);
  auto gen_with = [&](Elem e) {
    std::vector<Elem> gs(d.generators().begin(), d.generators().end());
    gs.push_back(e);
    return closure(g, gs);
  };
  for (Elem y = 1; y < g->order(); ++y) {
    if (!chi.contains(y) || d.contains(y)) continue;
    auto uy = gen_with(y);
    for (Elem x = 1; x < g->order(); ++x) {
      if (chi.whole() ? uy.contains(x) : chi.contains(x)) continue;
      if (need_gamma3) {
        std::vector<Elem> gs(g4.generators().begin(), g4.generators().end());
        gs.push_back(g->pow(y, 3));
        gs.push_back(g->pow(x, 3));
        if (!(closure(g, gs) == g3)) continue;
      }
      DesignatedGenerators dg{x, y, {}};
      const auto& members = sys.layers[1].members;
      for (std::size_t i = 0; i <= sys.p; ++i) {
        Elem gi = i == 0 ? y : g->mul(x, g->pow(y, static_cast<long>(i) - 1));
        auto ui = gen_with(gi);
        auto pos = detail::position(members, ui);
        if (!pos) return std::nullopt;
        dg.order.push_back(*pos);
      }
      return dg;
    }
  }
  return std::nullopt;
}

// Layer-1 members numbered by the designated generators when the group has
// them, canonically otherwise.
inline std::vector<Subgroup> reporting_members(const GroupPtr& g, const SubgroupLayerSystem& sys, bool* designated = nullptr) {
  if (designated) *designated = false;
  if (sys.layers.size() < 2) return {};
  const auto& m = sys.layers[1].members;
  auto dg = designated_generators(g, sys);
  if (!dg) return m;
  if (designated) *designated = true;
  std::vector<Subgroup> out;
  for (auto pos : dg->order) out.push_back(m[pos]);
  return out;
}

inline StbPol stb_pol(const GroupPtr& g, ParentKind kind) {
  auto e = parent(g, kind);
  if (!e) throw RootReached("'" + g->name() + "' is a root for this parent kind");
  auto sys = subgroup_layers(g);
  return stb_pol(e->kernel, reporting_members(g, sys));
}

enum class Polarization { total_stabilization, unipolarization, bipolarization, total_polarization, other };

inline std::string to_string(Polarization p) {
  switch (p) {
    case Polarization::total_stabilization: return "total-stabilization";
    case Polarization::unipolarization: return "unipolarization";
    case Polarization::bipolarization: return "bipolarization";
    case Polarization::total_polarization: return "total-polarization";
    case Polarization::other: return "partial-polarization";
  }
  return "?";
}

struct Classification {
  Polarization label = Polarization::other;               // from StbPol
  std::optional<Polarization> structural;                 // from the group structure
  std::string criterion;                                  // which structural test applied
  StbPol canonical;                                       // over canonical ordering
  std::optional<StbPol> designated;                       // over the paper's ordering
  bool agree() const noexcept { return !structural || *structural == label; }
};

inline Polarization polarization_label(std::size_t npol, std::size_t total) {
  if (npol == 0) return Polarization::total_stabilization;
  if (npol == total) return Polarization::total_polarization;
  if (npol == 1) return Polarization::unipolarization;
  if (npol == 2) return Polarization::bipolarization;
  return Polarization::other;
}

inline Classification classify_polarization(const GroupPtr& g) {
  auto sys = subgroup_layers(g);
  if (!sys.p || prime_of_power(g->order()) != sys.p) throw PreconditionError("classification needs a p-group");
  if (sys.shape != LayerShape::pp) throw PreconditionError("classification needs G/G' of type (p,p)");
  if (!derived_subgroup(sys.derived).trivial()) throw PreconditionError("classification needs a metabelian group");
  auto e = parent(g, {SeriesKind::lower_central, 0});
  if (!e) throw PreconditionError("classification needs a non-abelian group");
  Classification out;
  const auto& members = sys.layers[1].members;
  out.canonical = stb_pol(e->kernel, members);
  out.label = polarization_label(out.canonical.polarized.size(), members.size());
  if (auto dg = designated_generators(g, sys)) {
    std::vector<Subgroup> ordered;
    for (auto pos : dg->order) ordered.push_back(members[pos]);
    out.designated = stb_pol(e->kernel, ordered);
  }

  auto lc = series(g, SeriesKind::lower_central);
  const std::size_t c = lc.size() - 1;
  std::size_t n = 0;
  for (auto o = g->order(); o > 1; o /= sys.p) ++n;
  const std::size_t cc = n - c;
  const std::size_t m = c + 1;
  if ((c == 2 && cc == 1) || (c == 3 && cc >= 2)) {
    out.structural = Polarization::total_polarization;
    out.criterion = "extreme interface (class " + std::to_string(c) + ", coclass " + std::to_string(cc) + ")";
  } else if (cc == 1) {
    auto chi2 = two_step_centralizer(g, 2);
    auto ck = commutator_subgroup(chi2, sys.derived);
    // [chi_2, gamma_2] = gamma_{m-k}
    std::optional<std::size_t> k;
    for (std::size_t j = 1; j <= m; ++j) {
      const Subgroup gj = j - 1 < lc.size() ? lc[j - 1] : trivial_subgroup(g);
      if (gj == ck) {
        k = m - j;
        break;
      }
    }
    bool u1_abelian = derived_subgroup(chi2).trivial();
    if (k && *k == 0 && u1_abelian) {
      out.structural = Polarization::unipolarization;
      out.criterion = "maximal class, U_1 abelian, k = 0";
    } else if (k && *k >= 1) {
      out.structural = Polarization::total_stabilization;
      out.criterion = "maximal class, k = " + std::to_string(*k);
    } else {
      out.criterion = "maximal class, no case applies";
    }
  } else if (sys.p == 3 && c >= 4) {
    const auto& last = lc[c - 1];
    auto z = center(g);
    auto rank_of = [&](const Subgroup& s) { return abelian_type(subgroup_as_group(s).group).rank(); };
    std::size_t rl = rank_of(last);
    std::size_t rz = rank_of(z);
    if (rl == 2 && last == z) {
      out.structural = Polarization::bipolarization;
      out.criterion = "bicyclic gamma_c = bicyclic zeta_1";
    } else if (rl == 1 && rz == 2 && z.contains(last)) {
      out.structural = Polarization::unipolarization;
      out.criterion = "cyclic gamma_c < bicyclic zeta_1";
    } else if (rl == 1 && last == z) {
      out.structural = Polarization::total_stabilization;
      out.criterion = "cyclic gamma_c = cyclic zeta_1";
    } else {
      out.criterion = "non-maximal class, no case applies";
    }
  } else {
    out.criterion = "no structural theorem applies";
  }
  return out;
}

struct LayerTheorems {
  ParentKind kind;
  bool top_stable = true;       // G/G' type unchanged
  bool bottom_changed = true;   // G' type changed
  bool p_rank_stable = true;    // rank of G/G' unchanged
  bool metabelian = false;
  bool bottom_applies = false;  // ker(pi) <= G'
  bool rank_applies = false;    // ker(pi) <= Phi(G)
  bool holds() const noexcept {
    bool bottom = !(metabelian && bottom_applies) || bottom_changed;
    if (kind.tag == SeriesKind::lower_p_central) return bottom && (!rank_applies || p_rank_stable);
    return bottom && top_stable;
  }
};

inline LayerTheorems layer_theorems_check(const GroupPtr& g, ParentKind kind) {
  LayerTheorems out;
  out.kind = kind;
  auto e = parent(g, kind);
  if (!e) throw RootReached("'" + g->name() + "' is a root for this parent kind");
  auto dg = derived_subgroup(whole_group(g));
  out.metabelian = derived_subgroup(dg).trivial();
  out.bottom_applies = dg.contains(e->kernel);
  if (auto p = static_cast<long>(prime_of_power(g->order()))) {
    auto pc = series(g, SeriesKind::lower_p_central, p);
    out.rank_applies = pc.size() > 1 && pc[1].contains(e->kernel);
  }
  auto top = [](const GroupPtr& h) { return abelian_type(quotient(derived_subgroup(whole_group(h))).group); };
  auto bot = [](const GroupPtr& h) {
    auto d = derived_subgroup(whole_group(h));
    return abelian_type(subquotient(d, derived_subgroup(d)).group);
  };
  auto tg = top(g);
  auto tp = top(e->parent);
  out.top_stable = tg == tp;
  out.p_rank_stable = tg.rank() == tp.rank();
  out.bottom_changed = bot(g) != bot(e->parent);
  return out;
}

}  // namespace apat
