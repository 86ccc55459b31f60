#pragma once

#include <random>
#include <string>
#include <vector>

#include "artinpat/subgroup.hpp"

namespace apat {

enum class Side { left, right };

// Coset representatives of H in G. Left cosets are xH, right cosets Hx.
class Transversal {
 public:
  Transversal() = default;

  Transversal(Subgroup h, Side side, std::vector<Elem> reps) : h_(std::move(h)), side_(side), reps_(std::move(reps)) {
    const auto& g = *h_.ambient();
    if (reps_.size() * h_.order() != g.order()) throw PreconditionError("wrong number of coset representatives");
    coset_.assign(g.order(), kNone);
    for (std::uint32_t i = 0; i < reps_.size(); ++i)
      for (Elem y : h_.elements()) {
        Elem z = side_ == Side::left ? g.mul(reps_[i], y) : g.mul(y, reps_[i]);
        if (coset_[z] != kNone) throw PreconditionError("representatives " + g.label(reps_[coset_[z]]) + " and " + g.label(reps_[i]) + " share a coset");
        coset_[z] = i;
      }
  }

  const Subgroup& subgroup() const noexcept { return h_; }
  Side side() const noexcept { return side_; }
  std::size_t size() const noexcept { return reps_.size(); }
  Elem rep(std::size_t i) const { return reps_[i]; }
  std::span<const Elem> reps() const noexcept { return reps_; }
  std::uint32_t coset_index(Elem x) const { return coset_[x]; }

 private:
  static constexpr std::uint32_t kNone = ~0u;
  Subgroup h_;
  Side side_ = Side::left;
  std::vector<Elem> reps_;
  std::vector<std::uint32_t> coset_;
};

inline bool is_transversal(const Subgroup& h, Side side, std::span<const Elem> reps) {
  const auto& g = *h.ambient();
  if (reps.size() * h.order() != g.order()) return false;
  std::vector<bool> hit(g.order(), false);
  for (Elem r : reps)
    for (Elem y : h.elements()) {
      Elem z = side == Side::left ? g.mul(r, y) : g.mul(y, r);
      if (hit[z]) return false;
      hit[z] = true;
    }
  return true;
}

// Least element of every coset, so the identity represents H itself.
inline Transversal canonical_transversal(const Subgroup& h, Side side = Side::left) {
  const auto& g = *h.ambient();
  std::vector<bool> seen(g.order(), false);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    reps.push_back(x);
    for (Elem y : h.elements()) seen[side == Side::left ? g.mul(x, y) : g.mul(y, x)] = true;
  }
  return Transversal(h, side, std::move(reps));
}

inline Transversal left_transversal(const Subgroup& h) { return canonical_transversal(h, Side::left); }
inline Transversal right_transversal(const Subgroup& h) { return canonical_transversal(h, Side::right); }

// Random member of each coset of the canonical transversal.
template <class Rng>
Transversal random_transversal(const Subgroup& h, Side side, Rng& rng) {
  const auto& g = *h.ambient();
  auto base = canonical_transversal(h, side);
  std::uniform_int_distribution<std::size_t> pick(0, h.order() - 1);
  std::vector<Elem> reps;
  for (Elem r : base.reps()) {
    Elem y = h.elements()[pick(rng)];
    reps.push_back(side == Side::left ? g.mul(r, y) : g.mul(y, r));
  }
  return Transversal(h, side, std::move(reps));
}

// Inverting a left transversal always gives a right transversal.
inline Transversal inverted(const Transversal& t) {
  const auto& g = *t.subgroup().ambient();
  std::vector<Elem> reps;
  for (Elem r : t.reps()) reps.push_back(g.inv(r));
  return Transversal(t.subgroup(), t.side() == Side::left ? Side::right : Side::left, std::move(reps));
}

using Permutation = std::vector<std::uint32_t>;

// Left cosets: x l_i H = l_{lambda(i)} H. Right cosets: H l_i x = H l_{lambda(i)}.
inline Permutation permutation_rep(const Transversal& t, Elem x) {
  const auto& g = *t.subgroup().ambient();
  Permutation p(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    p[i] = t.coset_index(t.side() == Side::left ? g.mul(x, t.rep(i)) : g.mul(t.rep(i), x));
  return p;
}

}  // namespace apat
