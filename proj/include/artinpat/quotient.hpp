#pragma once

#include <string>
#include <vector>

#include "artinpat/hom.hpp"

namespace apat {

struct Quotient {
  GroupPtr group;
  GroupHomomorphism projection;  // G -> G/N
  Subgroup kernel;
};

inline Quotient quotient(const Subgroup& n) {
  const auto& g = n.ambient();
  if (!is_normal(n)) throw NotNormal("quotient by a subgroup that is not normal");
  auto all = whole_group(g);
  auto q = Group::from_cosets(g->name() + "/N" + std::to_string(n.order()), g, all.elements(), n.elements());
  std::vector<Elem> map(q->coset_map().begin(), q->coset_map().end());
  GroupHomomorphism proj(g, q, std::move(map));
  return {q, std::move(proj), n};
}

// H/N for N normal in H, both subgroups of the same ambient group.
// proj sends elements of H to cosets and everything else to kNoElem.
struct SubQuotient {
  GroupPtr group;
  Subgroup over;
  Subgroup by;
  Elem operator()(Elem x) const { return group->coset_of(x); }
};

inline SubQuotient subquotient(const Subgroup& h, const Subgroup& n) {
  if (!h.contains(n)) throw PreconditionError("subquotient H/N needs N <= H");
  if (!is_normal(n, h)) throw NotNormal("subquotient H/N needs N normal in H");
  auto q = Group::from_cosets(h.ambient()->name() + "[" + std::to_string(h.order()) + "/" + std::to_string(n.order()) + "]", h.ambient(), h.elements(), n.elements());
  return {q, h, n};
}

// H as a group in its own right, ids ordered like the ambient ids.
struct EmbeddedSubgroup {
  GroupPtr group;
  Subgroup in_ambient;

  Elem local(Elem ambient_elem) const { return group->coset_of(ambient_elem); }
  Elem ambient(Elem local_elem) const { return group->representative(local_elem); }

  Subgroup to_local(const Subgroup& s) const {
    std::vector<Elem> e;
    for (Elem x : s.elements()) e.push_back(local(x));
    return subgroup_from_elements(group, std::move(e));
  }
  Subgroup to_ambient(const Subgroup& s) const {
    std::vector<Elem> e;
    for (Elem x : s.elements()) e.push_back(ambient(x));
    return subgroup_from_elements(in_ambient.ambient(), std::move(e));
  }
  GroupHomomorphism embedding() const {
    std::vector<Elem> m(group->order());
    for (Elem x = 0; x < m.size(); ++x) m[x] = ambient(x);
    return GroupHomomorphism(group, in_ambient.ambient(), std::move(m));
  }
};

inline EmbeddedSubgroup subgroup_as_group(const Subgroup& h) {
  auto triv = trivial_subgroup(h.ambient());
  auto g = Group::from_cosets(h.ambient()->name() + "<" + std::to_string(h.order()) + ">", h.ambient(), h.elements(), triv.elements());
  return {g, h};
}

}  // namespace apat
