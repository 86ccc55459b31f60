#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "artinpat/abelian.hpp"
#include "artinpat/hom.hpp"
#include "artinpat/quotient.hpp"

namespace apat {

// Shape of G/G' that gives the layers their digit semantics.
enum class LayerShape { pp, p2p, other };

inline std::string to_string(LayerShape s) {
  switch (s) {
    case LayerShape::pp: return "(p,p)";
    case LayerShape::p2p: return "(p^2,p)";
    case LayerShape::other: return "other";
  }
  return "?";
}

struct Layer {
  std::size_t index = 1;
  std::vector<Subgroup> members;
  std::optional<std::size_t> distinguished;  // position of the flagged member
};

// All U with G' <= U <= G grouped by index; layers.front() is {G}, layers.back() is {G'}.
struct SubgroupLayerSystem {
  GroupPtr group;
  Subgroup derived;
  AbelianType abelianization;
  LayerShape shape = LayerShape::other;
  std::uint64_t p = 0;  // prime when G/G' is a p-group
  std::vector<Layer> layers;

  std::vector<Subgroup> family() const {
    std::vector<Subgroup> out;
    for (const auto& l : layers) out.insert(out.end(), l.members.begin(), l.members.end());
    return out;
  }

  const Layer* by_index(std::size_t idx) const {
    for (const auto& l : layers)
      if (l.index == idx) return &l;
    return nullptr;
  }

  // Position of u in the given layer, if present.
  std::optional<std::size_t> find(std::size_t layer, const Subgroup& u) const {
    const auto& m = layers.at(layer).members;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] == u) return i;
    return std::nullopt;
  }
};

inline SubgroupLayerSystem subgroup_layers(const GroupPtr& g) {
  SubgroupLayerSystem sys;
  sys.group = g;
  sys.derived = derived_subgroup(whole_group(g));
  auto q = quotient(sys.derived);
  sys.abelianization = abelian_type(q.group);
  sys.p = prime_of_power(q.group->order());
  const auto& f = sys.abelianization.factors();
  if (sys.p && f.size() == 2 && f[1] == sys.p) {
    if (f[0] == sys.p) sys.shape = LayerShape::pp;
    else if (f[0] == sys.p * sys.p) sys.shape = LayerShape::p2p;
  }
  std::vector<Subgroup> all;
  for (const auto& v : all_subgroups(q.group)) all.push_back(preimage_of(q.projection, v));
  std::sort(all.begin(), all.end());
  for (auto& u : all) {
    if (sys.layers.empty() || sys.layers.back().index != u.index()) sys.layers.push_back(Layer{u.index(), {}, std::nullopt});
    sys.layers.back().members.push_back(std::move(u));
  }
  if (sys.shape == LayerShape::p2p) {
    // H_{1,p+1} is generated by all index-p^2 members, H_{2,p+1} = Phi(G)
    auto& l1 = sys.layers[1].members;
    auto& l2 = sys.layers[2].members;
    Subgroup top = l2.front();
    for (const auto& u : l2) top = join(top, u);
    Subgroup phi = l1.front();
    for (const auto& u : l1) phi = intersection(phi, u);
    auto move_last = [](std::vector<Subgroup>& m, const Subgroup& s) {
      auto it = std::find(m.begin(), m.end(), s);
      if (it == m.end()) throw Error("distinguished subgroup missing from its layer");
      std::rotate(it, it + 1, m.end());
    };
    move_last(l1, top);
    move_last(l2, phi);
    sys.layers[1].distinguished = l1.size() - 1;
    sys.layers[2].distinguished = l2.size() - 1;
  }
  return sys;
}

}  // namespace apat
