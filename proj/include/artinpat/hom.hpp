#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "artinpat/group.hpp"
#include "artinpat/subgroup.hpp"

namespace apat {

// A homomorphism stored as its full element map.
class GroupHomomorphism {
 public:
  GroupHomomorphism() = default;

  // `map` must be multiplicative; make_hom is the checked entry point.
  GroupHomomorphism(GroupPtr dom, GroupPtr cod, std::vector<Elem> map)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {}

  const GroupPtr& domain() const noexcept { return dom_; }
  const GroupPtr& codomain() const noexcept { return cod_; }
  std::span<const Elem> element_map() const noexcept { return map_; }

  Elem operator()(Elem x) const { return map_[x]; }

  Subgroup kernel() const {
    std::vector<Elem> k;
    for (Elem x = 0; x < map_.size(); ++x)
      if (map_[x] == 0) k.push_back(x);
    return subgroup_from_elements(dom_, std::move(k));
  }

  Subgroup image() const {
    std::vector<Elem> imgs;
    for (Elem s : dom_->generators()) imgs.push_back(map_[s]);
    return closure(cod_, imgs);
  }

  bool injective() const { return kernel().trivial(); }
  bool surjective() const { return image().whole(); }
  bool bijective() const { return dom_->order() == cod_->order() && injective(); }

 private:
  GroupPtr dom_;
  GroupPtr cod_;
  std::vector<Elem> map_;
};

// Extends generator images along the Cayley graph of `gens`; every edge is
// checked, so success proves the extension is a homomorphism.
inline GroupHomomorphism make_hom(const GroupPtr& dom, const GroupPtr& cod, std::span<const Elem> gens, std::span<const Elem> images) {
  if (gens.size() != images.size()) throw PreconditionError("generator and image lists differ in length");
  const std::size_t N = dom->order();
  std::vector<Elem> map(N, kNoElem);
  std::vector<std::uint32_t> via(N, 0);   // generator used to reach x
  std::vector<Elem> from(N, kNoElem);     // BFS parent
  std::vector<Elem> queue{0};
  map[0] = 0;
  auto word_of = [&](Elem x) {
    std::vector<std::uint32_t> w;
    while (x != 0) {
      w.push_back(via[x]);
      x = from[x];
    }
    std::string s;
    for (auto it = w.rbegin(); it != w.rend(); ++it) s += (s.empty() ? "s" : " s") + std::to_string(*it + 1);
    return s.empty() ? std::string("id") : s;
  };
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Elem x = queue[qi];
    for (std::uint32_t k = 0; k < gens.size(); ++k) {
      Elem y = dom->mul(x, gens[k]);
      Elem want = cod->mul(map[x], images[k]);
      if (map[y] == kNoElem) {
        map[y] = want;
        from[y] = x;
        via[y] = k;
        queue.push_back(y);
      } else if (map[y] != want) {
        throw RelationViolation("images do not respect the relations",
                                "the words (" + word_of(x) + ") s" + std::to_string(k + 1) + " and (" + word_of(y) + ") name the same element but get different images");
      }
    }
  }
  if (queue.size() != N) throw PreconditionError("the given elements do not generate the domain");
  return GroupHomomorphism(dom, cod, std::move(map));
}

inline GroupHomomorphism make_hom(const GroupPtr& dom, const GroupPtr& cod, std::span<const Elem> images) {
  return make_hom(dom, cod, dom->generators(), images);
}

// Same search, but returns nullopt instead of throwing on a conflict.
inline std::optional<GroupHomomorphism> try_make_hom(const GroupPtr& dom, const GroupPtr& cod, std::span<const Elem> gens, std::span<const Elem> images) {
  const std::size_t N = dom->order();
  std::vector<Elem> map(N, kNoElem);
  std::vector<Elem> queue{0};
  queue.reserve(N);
  map[0] = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Elem x = queue[qi];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = dom->mul(x, gens[k]);
      Elem want = cod->mul(map[x], images[k]);
      if (map[y] == kNoElem) {
        map[y] = want;
        queue.push_back(y);
      } else if (map[y] != want) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != N) return std::nullopt;
  return GroupHomomorphism(dom, cod, std::move(map));
}

inline GroupHomomorphism identity_hom(const GroupPtr& g) {
  std::vector<Elem> m(g->order());
  std::iota(m.begin(), m.end(), Elem{0});
  return GroupHomomorphism(g, g, std::move(m));
}

// (psi o phi)(x) = psi(phi(x))
inline GroupHomomorphism compose(const GroupHomomorphism& psi, const GroupHomomorphism& phi) {
  if (phi.codomain().get() != psi.domain().get()) throw PreconditionError("composition of non-matching homomorphisms");
  std::vector<Elem> m(phi.domain()->order());
  for (Elem x = 0; x < m.size(); ++x) m[x] = psi(phi(x));
  return GroupHomomorphism(phi.domain(), psi.codomain(), std::move(m));
}

// Brute-force check of phi(xy) = phi(x) phi(y) on all pairs.
inline bool is_multiplicative(const GroupHomomorphism& f) {
  const auto& d = *f.domain();
  const auto& c = *f.codomain();
  for (Elem x = 0; x < d.order(); ++x)
    for (Elem y = 0; y < d.order(); ++y)
      if (f(d.mul(x, y)) != c.mul(f(x), f(y))) return false;
  return true;
}

inline Subgroup image_of(const GroupHomomorphism& f, const Subgroup& u) {
  std::vector<Elem> imgs;
  for (Elem s : u.generators()) imgs.push_back(f(s));
  return closure(f.codomain(), imgs);
}

inline Subgroup preimage_of(const GroupHomomorphism& f, const Subgroup& v) {
  std::vector<Elem> out;
  for (Elem x = 0; x < f.domain()->order(); ++x)
    if (v.contains(f(x))) out.push_back(x);
  return subgroup_from_elements(f.domain(), std::move(out));
}

}  // namespace apat
