#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "artinpat/group.hpp"

namespace apat {

class Subgroup {
 public:
  Subgroup() = default;

  // `elements` must be a subgroup of g, sorted ascending; `gens` generate it.
  Subgroup(GroupPtr g, std::vector<Elem> elements, std::vector<Elem> gens)
      : group_(std::move(g)), elements_(std::move(elements)), gens_(std::move(gens)), member_(group_->order(), false) {
    for (Elem x : elements_) member_[x] = true;
  }

  const GroupPtr& ambient() const noexcept { return group_; }
  std::span<const Elem> elements() const noexcept { return elements_; }
  std::span<const Elem> generators() const noexcept { return gens_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t index() const noexcept { return group_->order() / elements_.size(); }
  bool trivial() const noexcept { return elements_.size() == 1; }
  bool whole() const noexcept { return elements_.size() == group_->order(); }

  bool contains(Elem x) const { return member_[x]; }
  bool contains(const Subgroup& other) const {
    if (other.order() > order()) return false;
    for (Elem x : other.elements_)
      if (!member_[x]) return false;
    return true;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.group_.get() == b.group_.get() && a.elements_ == b.elements_;
  }
  // canonical order: smaller index first, then element ids
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() > b.order();
    return a.elements_ < b.elements_;
  }

 private:
  GroupPtr group_;
  std::vector<Elem> elements_;
  std::vector<Elem> gens_;
  std::vector<bool> member_;
};

namespace detail {

// Extends `members` (closed set with flags `in`) to the subgroup generated by
// members and gens. Right multiplication by generators suffices in a finite group.
inline void close_under(const Group& g, std::vector<Elem>& members, std::vector<bool>& in, std::span<const Elem> gens) {
  std::size_t i = 0;
  while (i < members.size()) {
    Elem x = members[i++];
    for (Elem s : gens) {
      Elem y = g.mul(x, s);
      if (!in[y]) {
        in[y] = true;
        members.push_back(y);
      }
    }
  }
}

}  // namespace detail

inline Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}, {}); }

inline Subgroup whole_group(const GroupPtr& g) {
  std::vector<Elem> all(g->order());
  std::iota(all.begin(), all.end(), Elem{0});
  auto gens = g->generators();
  return Subgroup(g, std::move(all), {gens.begin(), gens.end()});
}

inline Subgroup closure(const GroupPtr& g, std::span<const Elem> gens) {
  std::vector<bool> in(g->order(), false);
  std::vector<Elem> members{0};
  in[0] = true;
  std::vector<Elem> kept;
  for (Elem s : gens) {
    if (in[s]) continue;
    kept.push_back(s);
    detail::close_under(*g, members, in, kept);
  }
  std::sort(members.begin(), members.end());
  return Subgroup(g, std::move(members), std::move(kept));
}

// For a set known to be a subgroup; finds a small generating set.
inline Subgroup subgroup_from_elements(const GroupPtr& g, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<bool> in(g->order(), false);
  std::vector<Elem> members{0};
  in[0] = true;
  std::vector<Elem> gens;
  // prefer high-order elements so fewer generators are needed
  std::vector<std::pair<std::size_t, Elem>> by_order;
  for (Elem x : elems)
    if (x != 0) by_order.push_back({g->element_order(x), x});
  std::stable_sort(by_order.begin(), by_order.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (auto [o, x] : by_order) {
    if (members.size() == elems.size()) break;
    if (in[x]) continue;
    gens.push_back(x);
    detail::close_under(*g, members, in, gens);
  }
  if (members.size() != elems.size()) throw PreconditionError("element set is not a subgroup");
  return Subgroup(g, std::move(elems), std::move(gens));
}

inline Subgroup join(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> gens(a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return closure(a.ambient(), gens);
}

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> out;
  for (Elem x : a.elements())
    if (b.contains(x)) out.push_back(x);
  return subgroup_from_elements(a.ambient(), std::move(out));
}

// Closure of `gens` under conjugation by `by`.
inline Subgroup normal_closure(const GroupPtr& g, std::span<const Elem> gens, std::span<const Elem> by) {
  std::vector<bool> in(g->order(), false);
  std::vector<Elem> members{0};
  in[0] = true;
  std::vector<Elem> kept;
  std::vector<Elem> todo(gens.begin(), gens.end());
  while (!todo.empty()) {
    Elem s = todo.back();
    todo.pop_back();
    if (in[s]) continue;
    kept.push_back(s);
    detail::close_under(*g, members, in, kept);
    for (Elem k : kept)
      for (Elem t : by) {
        Elem c = g->conj(k, t);
        if (!in[c]) todo.push_back(c);
      }
  }
  // the loop above only conjugates generators, which is enough once stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < kept.size(); ++i)
      for (Elem t : by) {
        Elem c = g->conj(kept[i], t);
        if (!in[c]) {
          kept.push_back(c);
          detail::close_under(*g, members, in, kept);
          changed = true;
        }
      }
  }
  std::sort(members.begin(), members.end());
  return Subgroup(g, std::move(members), std::move(kept));
}

inline Subgroup normal_closure(const Subgroup& s, const Subgroup& in) { return normal_closure(s.ambient(), s.generators(), in.generators()); }

// [U, V]: generator commutators, closed under conjugation by <U, V>.
inline Subgroup commutator_subgroup(const Subgroup& u, const Subgroup& v) {
  const auto& g = u.ambient();
  std::vector<Elem> comms;
  for (Elem a : u.generators())
    for (Elem b : v.generators()) comms.push_back(g->commutator(a, b));
  std::vector<Elem> by(u.generators().begin(), u.generators().end());
  by.insert(by.end(), v.generators().begin(), v.generators().end());
  return normal_closure(g, comms, by);
}

inline Subgroup derived_subgroup(const Subgroup& u) { return commutator_subgroup(u, u); }

inline bool is_normal(const Subgroup& n, const Subgroup& in) {
  const auto& g = n.ambient();
  for (Elem t : in.generators())
    for (Elem s : n.generators())
      if (!n.contains(g->conj(s, t))) return false;
  return true;
}

inline bool is_normal(const Subgroup& n) { return is_normal(n, whole_group(n.ambient())); }

inline bool is_abelian(const Subgroup& u) {
  const auto& g = u.ambient();
  auto gens = u.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g->mul(gens[i], gens[j]) != g->mul(gens[j], gens[i])) return false;
  return true;
}

inline bool is_abelian(const GroupPtr& g) { return is_abelian(whole_group(g)); }

inline Subgroup centralizer(const Subgroup& of, const Subgroup& in) {
  const auto& g = of.ambient();
  std::vector<Elem> out;
  for (Elem x : in.elements()) {
    bool ok = true;
    for (Elem s : of.generators())
      if (g->mul(x, s) != g->mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return subgroup_from_elements(g, std::move(out));
}

inline Subgroup center(const GroupPtr& g) {
  auto all = whole_group(g);
  return centralizer(all, all);
}

// Subgroup generated by p-th powers of all elements of u.
inline Subgroup power_subgroup(const Subgroup& u, long p) {
  const auto& g = u.ambient();
  std::vector<Elem> pw;
  for (Elem x : u.elements()) pw.push_back(g->pow(x, p));
  return closure(g, pw);
}

// Every subgroup of g, in canonical order. Intended for small groups.
namespace detail {

inline std::uint64_t prime_power_base(std::uint64_t n) {
  if (n < 2) return 0;
  std::uint64_t p = 2;
  while (n % p) ++p;
  while (n % p == 0) n /= p;
  return n == 1 ? p : 0;
}

// In a p-group every H > 1 is M<x> with M maximal in H, x normalizing M and
// x^p in M, so layers grow one coset union at a time without closures.
inline std::vector<Subgroup> p_group_subgroups(const GroupPtr& g, long p) {
  const auto& G = *g;
  std::set<std::vector<Elem>> seen;
  std::vector<Subgroup> out;
  out.push_back(Subgroup(g, {0}, {}));
  seen.insert({0});
  std::vector<char> done(G.order());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Subgroup m = out[i];
    std::fill(done.begin(), done.end(), 0);
    for (Elem x : m.elements()) done[x] = 1;
    for (Elem x = 1; x < G.order(); ++x) {
      if (done[x] || !m.contains(G.pow(x, p))) continue;
      bool normalizes = true;
      for (Elem s : m.generators())
        if (!m.contains(G.conj(s, x))) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      std::vector<Elem> elems(m.elements().begin(), m.elements().end());
      Elem xk = x;
      for (long k = 1; k < p; ++k, xk = G.mul(xk, x))
        for (Elem u : m.elements()) elems.push_back(G.mul(u, xk));
      for (Elem y : elems) done[y] = 1;
      std::sort(elems.begin(), elems.end());
      if (!seen.insert(elems).second) continue;
      std::vector<Elem> gens(m.generators().begin(), m.generators().end());
      gens.push_back(x);
      out.push_back(Subgroup(g, std::move(elems), std::move(gens)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
  if (auto p = detail::prime_power_base(g->order())) return detail::p_group_subgroups(g, static_cast<long>(p));
  std::set<std::vector<Elem>> seen;
  std::vector<Subgroup> out;
  std::vector<Subgroup> cyclic;
  auto add = [&](Subgroup s) -> bool {
    if (!seen.insert(std::vector<Elem>(s.elements().begin(), s.elements().end())).second) return false;
    out.push_back(std::move(s));
    return true;
  };
  add(trivial_subgroup(g));
  for (Elem x = 1; x < g->order(); ++x) {
    Elem gx[] = {x};
    auto c = closure(g, gx);
    if (add(c)) cyclic.push_back(c);
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    for (const auto& c : cyclic) {
      if (out[i].contains(c)) continue;
      auto j = join(out[i], c);
      add(std::move(j));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

enum class SeriesKind { lower_central, derived, lower_p_central };

inline std::string to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::lower_central: return "lower-central";
    case SeriesKind::derived: return "derived";
    case SeriesKind::lower_p_central: return "lower-p-central";
  }
  return "?";
}

// Descending chain starting at G; stops at the trivial subgroup or when the
// series stabilizes above it. p is only used by the lower p-central series.
inline std::vector<Subgroup> series(const GroupPtr& g, SeriesKind kind, long p = 0) {
  std::vector<Subgroup> chain{whole_group(g)};
  const auto all = chain.front();
  while (!chain.back().trivial()) {
    const auto& cur = chain.back();
    Subgroup next;
    switch (kind) {
      case SeriesKind::lower_central: next = commutator_subgroup(cur, all); break;
      case SeriesKind::derived: next = derived_subgroup(cur); break;
      case SeriesKind::lower_p_central: {
        auto c = commutator_subgroup(all, cur);
        std::vector<Elem> gens(c.generators().begin(), c.generators().end());
        for (Elem x : cur.elements()) gens.push_back(g->pow(x, p));
        next = normal_closure(g, gens, all.generators());
        break;
      }
    }
    if (next.order() == cur.order()) break;
    chain.push_back(std::move(next));
  }
  return chain;
}

inline bool reaches_trivial(const std::vector<Subgroup>& chain) { return chain.back().trivial(); }

// Number of steps down to the trivial subgroup, if it is reached.
inline std::optional<std::size_t> series_length(const GroupPtr& g, SeriesKind kind, long p = 0) {
  auto s = series(g, kind, p);
  if (!reaches_trivial(s)) return std::nullopt;
  return s.size() - 1;
}

inline std::optional<std::size_t> nilpotency_class(const GroupPtr& g) { return series_length(g, SeriesKind::lower_central); }
inline std::optional<std::size_t> derived_length(const GroupPtr& g) { return series_length(g, SeriesKind::derived); }

// chi_j = {x : [x, gamma_j] <= gamma_{j+2}}, j >= 2.
inline Subgroup two_step_centralizer(const GroupPtr& g, std::size_t j) {
  auto lc = series(g, SeriesKind::lower_central);
  if (!reaches_trivial(lc)) throw PreconditionError("two-step centralizer needs a nilpotent group");
  const std::size_t cls = lc.size() - 1;
  if (j < 2) throw PreconditionError("two-step centralizer index must be at least 2");
  if (j > cls) return whole_group(g);
  // lc[k] is gamma_{k+1}
  const auto& gj = lc[j - 1];
  const Subgroup& gj2 = j + 1 < lc.size() ? lc[j + 1] : lc.back();
  std::vector<Elem> out;
  for (Elem x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (Elem s : gj.generators())
      if (!gj2.contains(g->commutator(x, s))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return subgroup_from_elements(g, std::move(out));
}

}  // namespace apat
