#pragma once

#include <algorithm>
#include <charconv>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "artinpat/abelian.hpp"
#include "artinpat/layers.hpp"
#include "artinpat/transfer.hpp"

namespace apat {

// Reserved digit for kernels that fit no case of the encoding.
inline constexpr int kAnomalyDigit = -1;

struct TktDigits {
  std::vector<int> digits;
  int layer = 1;

  bool anomalous(std::size_t i) const { return digits[i] == kAnomalyDigit; }
  bool any_anomaly() const { return std::find(digits.begin(), digits.end(), kAnomalyDigit) != digits.end(); }

  // No separators while every digit fits one character (p <= 7), commas otherwise.
  std::string to_string() const {
    bool wide = std::any_of(digits.begin(), digits.end(), [](int d) { return d >= 10; });
    std::string s;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (wide && i) s += ',';
      s += digits[i] == kAnomalyDigit ? std::string("*") : std::to_string(digits[i]);
    }
    return s;
  }

  static TktDigits parse(std::string_view s, int layer = 1) {
    TktDigits t;
    t.layer = layer;
    auto push = [&](std::string_view tok) {
      if (tok == "*") {
        t.digits.push_back(kAnomalyDigit);
        return;
      }
      int v = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || p != tok.data() + tok.size() || v < 0) throw Error("bad TKT digit '" + std::string(tok) + "'");
      t.digits.push_back(v);
    };
    if (s.find(',') != std::string_view::npos) {
      while (true) {
        auto c = s.find(',');
        push(s.substr(0, c));
        if (c == std::string_view::npos) break;
        s.remove_prefix(c + 1);
      }
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) push(s.substr(i, 1));
    }
    return t;
  }

  friend bool operator==(const TktDigits&, const TktDigits&) = default;
};

inline std::size_t total_kernel_counter(const TktDigits& k) {
  return static_cast<std::size_t>(std::count(k.digits.begin(), k.digits.end(), 0));
}

namespace detail {

// digit relabelling under a renumbering perm (1-based members j -> inverse(j));
// digits outside 1..perm.size() stay fixed
inline int relabel(int d, const std::vector<int>& inv) {
  if (d >= 1 && d <= static_cast<int>(inv.size())) return inv[d - 1] + 1;
  return d;
}

inline std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

// new[i] = relabel(old[perm[i]]) for the members permuted by perm, fixed tail
inline std::vector<int> renumber(const std::vector<int>& digits, const std::vector<int>& perm, const std::vector<int>& relabel_inv) {
  std::vector<int> out(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    std::size_t src = i < perm.size() ? static_cast<std::size_t>(perm[i]) : i;
    out[i] = relabel(digits[src], relabel_inv);
  }
  return out;
}

template <class F>
void for_each_permutation(std::size_t n, F&& f) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do f(p);
  while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace detail

// Least element of the S_{p+1} orbit lambda = pi~^-1 o kappa o pi.
inline TktDigits canonical_tkt(const TktDigits& k) {
  TktDigits best = k;
  detail::for_each_permutation(k.digits.size(), [&](const std::vector<int>& pi) {
    auto cand = detail::renumber(k.digits, pi, detail::inverse_perm(pi));
    if (cand < best.digits) best.digits = cand;
  });
  return best;
}

// (p^2,p): layer-1 renumbering a and layer-2 renumbering b act on the first
// p members of each layer; the distinguished members and digit 0 stay fixed.
inline std::pair<TktDigits, TktDigits> canonical_tkt(const TktDigits& k1, const TktDigits& k2) {
  const std::size_t p = k1.digits.size() - 1;
  std::pair<TktDigits, TktDigits> best{k1, k2};
  detail::for_each_permutation(p, [&](const std::vector<int>& a) {
    auto ainv = detail::inverse_perm(a);
    detail::for_each_permutation(p, [&](const std::vector<int>& b) {
      auto binv = detail::inverse_perm(b);
      auto c1 = detail::renumber(k1.digits, a, binv);
      auto c2 = detail::renumber(k2.digits, b, ainv);
      if (std::tie(c1, c2) < std::tie(best.first.digits, best.second.digits)) {
        best.first.digits = std::move(c1);
        best.second.digits = std::move(c2);
      }
    });
  });
  return best;
}

struct PatternLayer {
  std::size_t index = 1;
  std::vector<Subgroup> members;
  std::vector<AbelianType> ttt;
  std::vector<Subgroup> kernels;
  std::vector<std::string> kernel_labels;  // "layer.position" of each kernel in the family, or "-"
  std::optional<TktDigits> tkt;            // digit semantics, where the shape defines it
  std::optional<std::size_t> distinguished;
};

struct ArtinPattern {
  std::string group;
  std::size_t order = 0;
  std::uint64_t p = 0;
  LayerShape shape = LayerShape::other;
  std::vector<PatternLayer> layers;  // layers[0] = {G}, layers.back() = {G'}

  const AbelianType& abelianization() const { return layers.front().ttt.front(); }
  const AbelianType& bottom() const { return layers.back().ttt.front(); }
  const Subgroup& derived() const { return layers.back().members.front(); }

  // Orbit-canonical TKT: layer 1 for (p,p), "k1;k2" for (p^2,p), empty otherwise.
  std::string tkt_canonical() const {
    if (shape == LayerShape::pp && layers.size() > 1 && layers[1].tkt) return canonical_tkt(*layers[1].tkt).to_string();
    if (shape == LayerShape::p2p && layers.size() > 2 && layers[1].tkt && layers[2].tkt) {
      auto [a, b] = canonical_tkt(*layers[1].tkt, *layers[2].tkt);
      return a.to_string() + ";" + b.to_string();
    }
    return {};
  }

  // Transfers with total kernel G among the first layer carrying them:
  // layer 1 in general, layer 2 for (p^2,p) where layer-1 kernels never are G.
  std::size_t counter0() const {
    std::size_t L = shape == LayerShape::p2p ? 2 : 1;
    if (layers.size() <= L) return 0;
    std::size_t c = 0;
    for (const auto& k : layers[L].kernels)
      if (k.whole()) ++c;
    return c;
  }
};

namespace detail {

inline std::optional<std::size_t> position(const std::vector<Subgroup>& v, const Subgroup& s) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == s) return i;
  return std::nullopt;
}

inline void assign_digits(ArtinPattern& ap) {
  auto label = [&](const Subgroup& k) -> std::string {
    for (std::size_t l = 0; l < ap.layers.size(); ++l)
      if (auto i = position(ap.layers[l].members, k)) return std::to_string(l) + "." + std::to_string(*i + 1);
    return "-";
  };
  for (auto& l : ap.layers) {
    l.kernel_labels.clear();
    for (const auto& k : l.kernels) l.kernel_labels.push_back(label(k));
  }
  if (ap.shape == LayerShape::pp) {
    auto& l1 = ap.layers[1];
    TktDigits t;
    t.layer = 1;
    for (const auto& k : l1.kernels) {
      if (k.whole()) t.digits.push_back(0);
      else if (auto i = position(l1.members, k)) t.digits.push_back(static_cast<int>(*i) + 1);
      else t.digits.push_back(kAnomalyDigit);
    }
    l1.tkt = t;
  } else if (ap.shape == LayerShape::p2p) {
    auto& l1 = ap.layers[1];
    auto& l2 = ap.layers[2];
    const auto& top = l1.members.back();  // H_{1,p+1}
    TktDigits t1, t2;
    t1.layer = 1;
    t2.layer = 2;
    for (const auto& k : l1.kernels) {
      if (k == top) t1.digits.push_back(0);
      else if (auto i = position(l2.members, k)) t1.digits.push_back(static_cast<int>(*i) + 1);
      else t1.digits.push_back(kAnomalyDigit);
    }
    for (const auto& k : l2.kernels) {
      if (k.whole()) t2.digits.push_back(0);
      else if (auto i = position(l1.members, k)) t2.digits.push_back(static_cast<int>(*i) + 1);
      else t2.digits.push_back(kAnomalyDigit);
    }
    l1.tkt = t1;
    l2.tkt = t2;
  }
}

}  // namespace detail

// Targets and kernels of the transfers to every member of the layer system.
inline ArtinPattern pattern_from_layers(const SubgroupLayerSystem& sys, std::string name) {
  ArtinPattern ap;
  ap.group = std::move(name);
  ap.order = sys.group->order();
  ap.p = sys.p;
  ap.shape = sys.shape;
  for (const auto& l : sys.layers) {
    PatternLayer pl;
    pl.index = l.index;
    pl.members = l.members;
    pl.distinguished = l.distinguished;
    for (const auto& u : l.members) {
      auto t = artin_transfer(u);
      pl.ttt.push_back(abelian_type(t.target()));
      pl.kernels.push_back(t.kernel());
    }
    ap.layers.push_back(std::move(pl));
  }
  detail::assign_digits(ap);
  return ap;
}

inline ArtinPattern restricted_pattern(const GroupPtr& g, std::string name = {}) {
  return pattern_from_layers(subgroup_layers(g), name.empty() ? g->name() : std::move(name));
}

struct PatternComponent {
  Subgroup subgroup;
  AbelianType ttt;
  Subgroup kernel;
};

// tau/kappa over a caller-chosen family of subgroups.
inline std::vector<PatternComponent> complete_pattern(const GroupPtr& g, const std::vector<Subgroup>& family) {
  std::vector<PatternComponent> out;
  for (const auto& u : family) {
    if (u.ambient().get() != g.get()) throw PreconditionError("family member is not a subgroup of the group");
    auto t = artin_transfer(u);
    out.push_back({u, abelian_type(t.target()), t.kernel()});
  }
  return out;
}

// Joint lexicographic minimum of (tau, kappa) over legal renumerations;
// members and kernels move along so that everything stays aligned.
inline ArtinPattern canonical_pattern(const ArtinPattern& ap) {
  if (ap.shape == LayerShape::other || ap.layers.size() < 2) return ap;
  auto apply = [&](const std::vector<int>& a, const std::vector<int>& b) {
    ArtinPattern out = ap;
    auto permute = [](PatternLayer& l, const std::vector<int>& perm) {
      auto m = l.members;
      auto t = l.ttt;
      auto k = l.kernels;
      for (std::size_t i = 0; i < perm.size(); ++i) {
        l.members[i] = m[perm[i]];
        l.ttt[i] = t[perm[i]];
        l.kernels[i] = k[perm[i]];
      }
    };
    permute(out.layers[1], a);
    if (!b.empty()) permute(out.layers[2], b);
    detail::assign_digits(out);
    return out;
  };
  // compare types by the AbelianType order, then digits
  auto less = [](const ArtinPattern& x, const ArtinPattern& y) {
    std::size_t top = x.shape == LayerShape::p2p ? 2 : 1;
    for (std::size_t l = 1; l <= top; ++l)
      if (x.layers[l].ttt != y.layers[l].ttt)
        return std::lexicographical_compare(x.layers[l].ttt.begin(), x.layers[l].ttt.end(), y.layers[l].ttt.begin(), y.layers[l].ttt.end());
    for (std::size_t l = 1; l <= top; ++l)
      if (x.layers[l].tkt->digits != y.layers[l].tkt->digits) return x.layers[l].tkt->digits < y.layers[l].tkt->digits;
    return false;
  };
  std::optional<ArtinPattern> best;
  if (ap.shape == LayerShape::pp) {
    detail::for_each_permutation(ap.layers[1].members.size(), [&](const std::vector<int>& a) {
      auto c = apply(a, {});
      if (!best || less(c, *best)) best = std::move(c);
    });
  } else {
    std::size_t p = ap.layers[1].members.size() - 1;
    detail::for_each_permutation(p, [&](const std::vector<int>& a) {
      detail::for_each_permutation(p, [&](const std::vector<int>& b) {
        auto c = apply(a, b);
        if (!best || less(c, *best)) best = std::move(c);
      });
    });
  }
  return *best;
}

struct MetabelianizationVerdict {
  bool metabelian = false;  // G'' = 1, nothing to compare
  bool holds = true;
  std::vector<std::string> mismatches;
};

// Patterns of G and G/G'' agree under U -> U/G''.
inline MetabelianizationVerdict metabelianization_check(const GroupPtr& g) {
  MetabelianizationVerdict v;
  auto d1 = derived_subgroup(whole_group(g));
  auto d2 = derived_subgroup(d1);
  if (d2.trivial()) {
    v.metabelian = true;
    return v;
  }
  auto q = quotient(d2);
  auto pg = restricted_pattern(g);
  auto pq = restricted_pattern(q.group);
  if (pg.layers.size() != pq.layers.size()) {
    v.holds = false;
    v.mismatches.push_back("layer counts differ");
    return v;
  }
  for (std::size_t l = 0; l < pg.layers.size(); ++l) {
    const auto& a = pg.layers[l];
    const auto& b = pq.layers[l];
    if (a.members.size() != b.members.size()) {
      v.holds = false;
      v.mismatches.push_back("layer " + std::to_string(l) + " sizes differ");
      continue;
    }
    for (std::size_t i = 0; i < a.members.size(); ++i) {
      auto img = image_of(q.projection, a.members[i]);
      auto j = detail::position(b.members, img);
      std::string where = "layer " + std::to_string(l) + " member " + std::to_string(i + 1);
      if (!j) {
        v.holds = false;
        v.mismatches.push_back(where + ": image not in the quotient's family");
        continue;
      }
      if (a.ttt[i] != b.ttt[*j]) {
        v.holds = false;
        v.mismatches.push_back(where + ": targets " + a.ttt[i].to_string() + " vs " + b.ttt[*j].to_string());
      }
      if (!(image_of(q.projection, a.kernels[i]) == b.kernels[*j])) {
        v.holds = false;
        v.mismatches.push_back(where + ": kernels differ");
      }
    }
  }
  return v;
}

}  // namespace apat
