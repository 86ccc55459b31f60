#pragma once

#include <optional>
#include <string>
#include <vector>

#include "artinpat/hom.hpp"
#include "artinpat/quotient.hpp"

namespace apat {

// phi~: G/U -> H/V with phi~ o omega_U = omega_V o phi.
struct InducedHom {
  Quotient source;  // G/U
  Quotient target;  // H/V
  GroupHomomorphism map;
};

inline InducedHom induced_on_quotients(const GroupHomomorphism& phi, const Subgroup& u, const Subgroup& v) {
  const auto& dom = *phi.domain();
  const auto& cod = *phi.codomain();
  if (u.ambient().get() != phi.domain().get() || v.ambient().get() != phi.codomain().get())
    throw PreconditionError("subgroups do not live in the domain and codomain");
  for (Elem x : u.elements())
    if (!v.contains(phi(x)))
      throw FactorizationError("no induced homomorphism: phi(U) is not contained in V; witness u = " + dom.label(x) + " with phi(u) = " + cod.label(phi(x)));
  auto qu = quotient(u);
  auto qv = quotient(v);
  std::vector<Elem> m(qu.group->order());
  for (Elem c = 0; c < m.size(); ++c) m[c] = qv.projection(phi(qu.group->representative(c)));
  GroupHomomorphism tilde(qu.group, qv.group, std::move(m));
  for (Elem x = 0; x < dom.order(); ++x)
    if (tilde(qu.projection(x)) != qv.projection(phi(x))) throw Error("induced map does not commute with the projections");
  return {std::move(qu), std::move(qv), std::move(tilde)};
}

// phi~: G/U -> H with phi~ o omega = phi, when U <= ker phi.
struct FactoredHom {
  Quotient source;
  GroupHomomorphism map;
};

inline FactoredHom factor_through_quotient(const GroupHomomorphism& phi, const Subgroup& u) {
  for (Elem x : u.elements())
    if (phi(x) != 0)
      throw FactorizationError("U is not contained in ker(phi); witness u = " + phi.domain()->label(x) + " with phi(u) = " + phi.codomain()->label(phi(x)));
  auto q = quotient(u);
  std::vector<Elem> m(q.group->order());
  for (Elem c = 0; c < m.size(); ++c) m[c] = phi(q.group->representative(c));
  GroupHomomorphism f(q.group, phi.codomain(), std::move(m));
  return {std::move(q), std::move(f)};
}

// S_n(G) for the three series: G^(n), gamma_n, P_n.
inline Subgroup series_member(const GroupPtr& g, SeriesKind kind, std::size_t n, long p = 0) {
  auto chain = series(g, kind, p);
  std::size_t k = kind == SeriesKind::lower_central ? (n == 0 ? 0 : n - 1) : n;
  if (k < chain.size()) return chain[k];
  return reaches_trivial(chain) ? trivial_subgroup(g) : chain.back();
}

struct SeriesCriterion {
  bool factors = false;  // phi factors through G/S_n(G)
  bool bounded = false;  // dl / cl / cl_p of phi(G) within the bound
  bool agree() const noexcept { return factors == bounded; }
};

inline SeriesCriterion series_factor_criterion(const GroupHomomorphism& phi, SeriesKind kind, std::size_t n, long p = 0) {
  if (n < 1) throw PreconditionError("series criterion needs n >= 1");
  SeriesCriterion out;
  try {
    factor_through_quotient(phi, series_member(phi.domain(), kind, n, p));
    out.factors = true;
  } catch (const FactorizationError&) {
    out.factors = false;
  }
  auto img = subgroup_as_group(phi.image());
  auto len = series_length(img.group, kind, p);
  std::size_t bound = kind == SeriesKind::lower_central ? n - 1 : n;
  out.bounded = len && *len <= bound;
  return out;
}

inline bool is_automorphism(const GroupHomomorphism& s) { return s.domain().get() == s.codomain().get() && s.bijective(); }

// sigma^ with sigma^ o phi = phi o sigma; needs sigma(ker phi) = ker phi.
inline GroupHomomorphism induced_automorphism(const GroupHomomorphism& phi, const GroupHomomorphism& sigma) {
  if (!is_automorphism(sigma) || sigma.domain().get() != phi.domain().get()) throw PreconditionError("sigma must be an automorphism of the domain of phi");
  if (!phi.surjective()) throw PreconditionError("phi must be onto");
  auto ker = phi.kernel();
  for (Elem k : ker.elements())
    if (!ker.contains(sigma(k)))
      throw FactorizationError("kernel is not sigma-invariant; witness k = " + phi.domain()->label(k) + " with sigma(k) = " + phi.domain()->label(sigma(k)) + " outside ker(phi)");
  const auto& cod = phi.codomain();
  std::vector<Elem> m(cod->order(), kNoElem);
  for (Elem x = 0; x < phi.domain()->order(); ++x) m[phi(x)] = phi(sigma(x));
  return GroupHomomorphism(cod, cod, std::move(m));
}

// sigma(x) G' = x^-1 G' for every x.
inline bool is_generator_inverting(const GroupHomomorphism& sigma) {
  const auto& g = sigma.domain();
  auto d = derived_subgroup(whole_group(g));
  for (Elem x = 0; x < g->order(); ++x)
    if (!d.contains(g->mul(x, sigma(x)))) return false;
  return true;
}

}  // namespace apat
