#pragma once

#include <optional>
#include <string>
#include <vector>

#include "artinpat/induced.hpp"
#include "artinpat/quotient.hpp"
#include "artinpat/transversal.hpp"

namespace apat {

// (u_x(1..n); lambda_x). Monomials are ambient ids lying in H.
// Left:  u_x(i) = l_{lambda(i)}^-1 x l_i.   Right: w_x(i) = r_i x r_{rho(i)}^-1.
struct MonomialImage {
  std::vector<Elem> monomials;
  Permutation perm;
  friend bool operator==(const MonomialImage&, const MonomialImage&) = default;
};

inline MonomialImage monomial_rep(const Transversal& t, Elem x) {
  const auto& g = *t.subgroup().ambient();
  MonomialImage m{std::vector<Elem>(t.size()), permutation_rep(t, x)};
  for (std::size_t i = 0; i < t.size(); ++i) {
    Elem j = t.rep(m.perm[i]);
    m.monomials[i] = t.side() == Side::left ? g.mul(g.mul(g.inv(j), x), t.rep(i)) : g.mul(g.mul(t.rep(i), x), g.inv(j));
  }
  return m;
}

// Wreath multiplication matching x -> image(x) being a homomorphism.
// Left:  (u, l)(v, m) = (i -> u(m(i)) v(i), l o m).
// Right: (u, r)(v, s) = (i -> u(i) v(r(i)), s o r).
inline MonomialImage wreath_mul(const Group& g, Side side, const MonomialImage& a, const MonomialImage& b) {
  const std::size_t n = a.perm.size();
  MonomialImage c{std::vector<Elem>(n), Permutation(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (side == Side::left) {
      c.perm[i] = a.perm[b.perm[i]];
      c.monomials[i] = g.mul(a.monomials[b.perm[i]], b.monomials[i]);
    } else {
      c.perm[i] = b.perm[a.perm[i]];
      c.monomials[i] = g.mul(a.monomials[i], b.monomials[a.perm[i]]);
    }
  }
  return c;
}

// Product of the monomials in transversal order, an element of H. Neither
// transversal independent nor multiplicative; only its image mod H' is.
inline Elem pre_transfer(const Transversal& t, Elem x) {
  const auto& g = *t.subgroup().ambient();
  auto m = monomial_rep(t, x);
  Elem acc = 0;
  for (Elem u : m.monomials) acc = g.mul(acc, u);
  return acc;
}

// T_{G,H}: G -> H/H'.
class ArtinTransfer {
 public:
  ArtinTransfer(Transversal t) : t_(std::move(t)) {
    const auto& h = t_.subgroup();
    derived_ = derived_subgroup(h);
    target_ = subquotient(h, derived_);
    const auto& g = *h.ambient();
    const auto& q = *target_.group;
    std::vector<Elem> m(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
      Elem acc = 0;
      for (Elem u : monomial_rep(t_, x).monomials) acc = q.mul(acc, target_(u));
      m[x] = acc;
    }
    map_ = GroupHomomorphism(h.ambient(), target_.group, std::move(m));
  }

  const GroupPtr& source() const noexcept { return t_.subgroup().ambient(); }
  const Subgroup& subgroup() const noexcept { return t_.subgroup(); }
  const Subgroup& derived() const noexcept { return derived_; }
  const GroupPtr& target() const noexcept { return target_.group; }
  const Transversal& transversal() const noexcept { return t_; }
  const GroupHomomorphism& map() const noexcept { return map_; }

  // h H' for h in H
  Elem project(Elem h) const { return target_(h); }
  Elem operator()(Elem x) const { return map_(x); }

  Subgroup kernel() const { return map_.kernel(); }

  // value of x under another transversal of the same subgroup, in this target
  Elem evaluate(const Transversal& t, Elem x) const {
    const auto& q = *target_.group;
    Elem acc = 0;
    for (Elem u : monomial_rep(t, x).monomials) acc = q.mul(acc, target_(u));
    return acc;
  }

 private:
  Transversal t_;
  Subgroup derived_;
  SubQuotient target_;
  GroupHomomorphism map_;
};

inline ArtinTransfer artin_transfer(const Subgroup& h) { return ArtinTransfer(left_transversal(h)); }
inline ArtinTransfer artin_transfer(const Transversal& t) { return ArtinTransfer(t); }

inline Subgroup transfer_kernel(const ArtinTransfer& t) { return t.kernel(); }

// One factor l_j^-1 x^{f_j} l_j per cycle of lambda_x on the left cosets.
inline Elem transfer_cycle_form(const ArtinTransfer& t, Elem x) {
  const auto& g = *t.source();
  const auto& q = *t.target();
  const auto tr = t.transversal().side() == Side::left ? t.transversal() : left_transversal(t.subgroup());
  auto lam = permutation_rep(tr, x);
  std::vector<bool> done(lam.size(), false);
  Elem acc = 0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (done[i]) continue;
    long f = 0;
    for (std::size_t j = i; !done[j]; j = lam[j]) {
      done[j] = true;
      ++f;
    }
    Elem l = tr.rep(i);
    acc = q.mul(acc, t.project(g.mul(g.mul(g.inv(l), g.pow(x, f)), l)));
  }
  return acc;
}

// H normal: with f = ord(xH) and l_j representing the right cosets of <x>H,
// T(x) = prod l_j^-1 x^f l_j H'.
inline Elem transfer_normal_form(const ArtinTransfer& t, Elem x) {
  const auto& h = t.subgroup();
  if (!is_normal(h)) throw NotNormal("normal-subgroup form of the transfer needs H normal in G");
  const auto& g = *t.source();
  const auto& q = *t.target();
  long f = 1;
  Elem xf = x;
  while (!h.contains(xf)) {
    xf = g.mul(xf, x);
    ++f;
  }
  std::vector<Elem> gens(h.generators().begin(), h.generators().end());
  gens.push_back(x);
  auto k = closure(h.ambient(), gens);
  auto reps = right_transversal(k);
  Elem acc = 0;
  for (Elem l : reps.reps()) acc = q.mul(acc, t.project(g.mul(g.mul(g.inv(l), xf), l)));
  return acc;
}

struct CompositionCheck {
  bool holds = true;
  std::string witness;
};

// T_{G,K} = T~_{H,K} o T_{G,H}, with T~_{H,K}: H/H' -> K/K' induced by T_{H,K}.
inline CompositionCheck compose_transfers(const Subgroup& h, const Subgroup& k) {
  if (!h.contains(k)) throw PreconditionError("composition of transfers needs K <= H");
  const auto& g = *h.ambient();
  auto tgh = artin_transfer(h);
  auto tgk = artin_transfer(k);
  auto hg = subgroup_as_group(h);
  auto thk = artin_transfer(hg.to_local(k));
  // T_{H,K} factors through H/H' since its target is abelian
  auto fac = factor_through_quotient(thk.map(), hg.to_local(tgh.derived()));
  // H/H' as built by T_{G,H} and by the factorization share coset members
  CompositionCheck out;
  for (Elem x = 0; x < g.order(); ++x) {
    Elem c = tgh(x);
    Elem rep = tgh.target()->representative(c);
    Elem via = fac.map(fac.source.projection(hg.local(rep)));
    auto [root, elem] = lift_to_root(*thk.target(), via);
    (void)root;
    if (tgk.project(elem) != tgk(x)) {
      out.holds = false;
      out.witness = "x = " + g.label(x);
      return out;
    }
  }
  return out;
}

// gamma_x in S_m wr S_n for K <= H <= G.
struct StabilizerImage {
  std::vector<Permutation> sigma;  // sigma_{u_x(i)} on the m cosets of K in H
  Permutation lambda;              // on the n cosets of H in G
  std::size_t m = 0;

  // gamma_x(i, j) = (lambda(i), sigma_i(j)), flattened to i*m + j
  Permutation flat() const {
    Permutation p(lambda.size() * m);
    for (std::size_t i = 0; i < lambda.size(); ++i)
      for (std::size_t j = 0; j < m; ++j) p[i * m + j] = static_cast<std::uint32_t>(lambda[i] * m + sigma[i][j]);
    return p;
  }
};

class StabilizerRep {
 public:
  StabilizerRep(const Subgroup& h, const Subgroup& k) : tg_(left_transversal(h)), hg_(subgroup_as_group(h)) {
    if (!h.contains(k)) throw PreconditionError("stabilizer representation needs K <= H");
    tk_ = left_transversal(hg_.to_local(k));
    std::vector<Elem> reps;
    const auto& g = *h.ambient();
    for (Elem l : tg_.reps())
      for (Elem kk : tk_.reps()) reps.push_back(g.mul(l, hg_.ambient(kk)));
    flat_ = Transversal(k, Side::left, std::move(reps));
  }

  std::size_t n() const { return tg_.size(); }
  std::size_t m() const { return tk_.size(); }

  StabilizerImage operator()(Elem x) const {
    auto mono = monomial_rep(tg_, x);
    StabilizerImage s{{}, mono.perm, m()};
    for (Elem u : mono.monomials) s.sigma.push_back(permutation_rep(tk_, hg_.local(u)));
    return s;
  }

  // direct action of x on the cosets l_i k_j K
  Permutation direct(Elem x) const { return permutation_rep(flat_, x); }

 private:
  Transversal tg_;
  EmbeddedSubgroup hg_;
  Transversal tk_;
  Transversal flat_;
};

// Composition in S_m wr S_n (left convention, as for monomials).
inline StabilizerImage stabilizer_mul(const StabilizerImage& a, const StabilizerImage& b) {
  const std::size_t n = a.lambda.size();
  StabilizerImage c{std::vector<Permutation>(n, Permutation(a.m)), Permutation(n), a.m};
  for (std::size_t i = 0; i < n; ++i) {
    c.lambda[i] = a.lambda[b.lambda[i]];
    for (std::size_t j = 0; j < a.m; ++j) c.sigma[i][j] = a.sigma[b.lambda[i]][b.sigma[i][j]];
  }
  return c;
}

inline StabilizerImage stabilizer_rep(const Subgroup& h, const Subgroup& k, Elem x) { return StabilizerRep(h, k)(x); }

}  // namespace apat
