#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "artinpat/collector.hpp"
#include "artinpat/error.hpp"

namespace apat {

using Elem = std::uint32_t;
inline constexpr Elem kNoElem = std::numeric_limits<Elem>::max();

class Group;
using GroupPtr = std::shared_ptr<const Group>;

enum class Backend { pc_collection, coset_table };

// Groups up to this order get a full multiplication table.
inline constexpr std::size_t kTableBound = 4096;

// A finite group on dense ids 0..order-1, identity 0. Immutable once built.
//
// pc_collection: ids are normal forms of a consistent pc presentation.
// coset_table: ids are cosets N*x inside a subgroup H of a parent group,
// numbered by least member; covers quotients (H = parent) and subgroups
// viewed as groups (N trivial).
class Group {
  struct Token {};

 public:
  // pc backend
  Group(Token, std::string name, Collector col, GeneratorAction act)
      : name_(std::move(name)), backend_(Backend::pc_collection), order_(act.radix.size()) {
    pc_ = std::make_shared<PcData>(PcData{std::move(col), std::move(act)});
    const int n = pc_->col.rank();
    for (int k = 0; k < n; ++k) generators_.push_back(static_cast<Elem>(pc_->act.radix.stride(k)));
    finish();
  }

  // coset backend
  Group(Token, std::string name, GroupPtr parent, std::vector<Elem> reps, std::vector<Elem> coset_of)
      : name_(std::move(name)), backend_(Backend::coset_table), order_(reps.size()) {
    cos_ = std::make_shared<CosetData>(CosetData{std::move(parent), std::move(reps), std::move(coset_of)});
    finish_coset_generators();
    finish();
  }

  static GroupPtr from_presentation(const PcPresentation& p, std::size_t max_order = default_max_order()) {
    std::size_t claimed = 1;
    for (int e : p.orders) {
      claimed *= static_cast<std::size_t>(e);
      if (claimed > max_order) throw BoundExceeded("group '" + p.name + "' exceeds enumeration bound " + std::to_string(max_order));
    }
    Collector col(p);
    auto act = generator_action(col);
    auto rep = check_consistency(col, act);
    if (!rep.consistent) throw InconsistentPresentation("presentation '" + p.name + "' is inconsistent: " + rep.witness);
    return std::make_shared<const Group>(Token{}, p.name, std::move(col), std::move(act));
  }

  // Cosets of `n_elems` (a normal subgroup of <h_elems>) within h_elems.
  // Both sets are sorted ids of `parent`; n_elems must be normal in h_elems.
  static GroupPtr from_cosets(std::string name, GroupPtr parent, std::span<const Elem> h_elems, std::span<const Elem> n_elems) {
    std::vector<Elem> coset_of(parent->order(), kNoElem);
    std::vector<Elem> reps;
    for (Elem x : h_elems) {
      if (coset_of[x] != kNoElem) continue;
      Elem id = static_cast<Elem>(reps.size());
      reps.push_back(x);
      for (Elem y : n_elems) coset_of[parent->mul(y, x)] = id;
    }
    return std::make_shared<const Group>(Token{}, std::move(name), std::move(parent), std::move(reps), std::move(coset_of));
  }

  const std::string& name() const noexcept { return name_; }
  Backend backend() const noexcept { return backend_; }
  std::size_t order() const noexcept { return order_; }
  bool tabulated() const noexcept { return !table_.empty(); }
  std::span<const Elem> generators() const noexcept { return generators_; }

  Elem identity() const noexcept { return 0; }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
    return slow_mul(a, b);
  }

  Elem inv(Elem a) const { return inverse_[a]; }

  Elem pow(Elem a, long e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Elem r = 0;
    Elem b = a;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  Elem conj(Elem a, Elem by) const { return mul(mul(inv(by), a), by); }       // by^-1 a by
  Elem commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }  // a^-1 b^-1 a b

  std::size_t element_order(Elem a) const {
    std::size_t k = 1;
    for (Elem x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }

  std::string label(Elem a) const {
    if (backend_ == Backend::pc_collection) return exponents_to_string(pc_->act.radix.exponents(a));
    auto r = cos_->reps[a];
    if (cos_->parent->order() == order_) return cos_->parent->label(r);
    return "[" + cos_->parent->label(r) + "]";
  }

  // pc backend only
  const Collector* collector() const noexcept { return pc_ ? &pc_->col : nullptr; }
  Exponents exponents(Elem a) const { return pc_->act.radix.exponents(a); }
  Elem from_exponents(std::span<const int> e) const { return pc_->act.radix.id(e); }

  // coset backend only
  const GroupPtr& parent() const { return cos_->parent; }
  Elem representative(Elem a) const { return cos_->reps[a]; }
  Elem coset_of(Elem parent_elem) const { return cos_->coset_of[parent_elem]; }
  std::span<const Elem> coset_map() const { return cos_->coset_of; }

 private:
  struct PcData {
    Collector col;
    GeneratorAction act;
  };
  struct CosetData {
    GroupPtr parent;
    std::vector<Elem> reps;
    std::vector<Elem> coset_of;
  };

  Elem slow_mul(Elem a, Elem b) const {
    if (backend_ == Backend::pc_collection) {
      const auto& act = pc_->act;
      auto eb = act.radix.exponents(b);
      Elem x = a;
      for (int k = 0; k < static_cast<int>(eb.size()); ++k)
        for (int t = 0; t < eb[k]; ++t) x = act.right[k][x];
      return x;
    }
    return cos_->coset_of[cos_->parent->mul(cos_->reps[a], cos_->reps[b])];
  }

  void finish_coset_generators() {
    // a generating set from the parent's generators is not available in
    // general (H may be a proper subgroup), so build one greedily
    std::vector<bool> in(order_, false);
    std::vector<Elem> members{0};
    in[0] = true;
    for (Elem x = 1; x < order_; ++x) {
      if (in[x]) continue;
      generators_.push_back(x);
      // re-close under all generators
      std::size_t i = 0;
      while (i < members.size()) {
        for (Elem g : generators_) {
          Elem y = slow_mul(members[i], g);
          if (!in[y]) {
            in[y] = true;
            members.push_back(y);
          }
        }
        ++i;
      }
    }
  }

  void finish() {
    if (order_ <= kTableBound) {
      table_.resize(order_ * order_);
      if (backend_ == Backend::pc_collection) {
        // a*b for b = b' * g_k with b' the normal form of b minus one g_k
        const auto& act = pc_->act;
        const int n = pc_->col.rank();
        for (Elem a = 0; a < order_; ++a) {
          std::uint16_t* row = table_.data() + static_cast<std::size_t>(a) * order_;
          row[0] = static_cast<std::uint16_t>(a);
          for (Elem b = 1; b < order_; ++b) {
            int k = n - 1;
            while ((b / act.radix.stride(k)) % pc_->col.orders()[k] == 0) --k;
            Elem prev = b - static_cast<Elem>(act.radix.stride(k));
            row[b] = static_cast<std::uint16_t>(act.right[k][row[prev]]);
          }
        }
      } else {
        for (Elem a = 0; a < order_; ++a)
          for (Elem b = 0; b < order_; ++b)
            table_[static_cast<std::size_t>(a) * order_ + b] = static_cast<std::uint16_t>(slow_mul(a, b));
      }
    }
    inverse_.assign(order_, kNoElem);
    inverse_[0] = 0;
    if (backend_ == Backend::pc_collection) {
      for (Elem a = 1; a < order_; ++a) inverse_[a] = pc_->act.radix.id(pc_->col.inverse(pc_->act.radix.exponents(a)));
    } else {
      const auto& par = *cos_->parent;
      for (Elem a = 1; a < order_; ++a) inverse_[a] = cos_->coset_of[par.inv(cos_->reps[a])];
    }
  }

  std::string name_;
  Backend backend_;
  std::size_t order_;
  std::vector<Elem> generators_;
  std::vector<std::uint16_t> table_;
  std::vector<Elem> inverse_;
  std::shared_ptr<PcData> pc_;
  std::shared_ptr<CosetData> cos_;

};

inline GroupPtr make_group(const PcPresentation& p, std::size_t max_order = default_max_order()) {
  return Group::from_presentation(p, max_order);
}

// Follows coset backends down to the root group and returns an element of
// the root lying in the coset, the least one when every level is numbered by
// least members.
inline std::pair<const Group*, Elem> lift_to_root(const Group& g, Elem a) {
  const Group* cur = &g;
  while (cur->backend() == Backend::coset_table) {
    a = cur->representative(a);
    cur = cur->parent().get();
  }
  return {cur, a};
}

}  // namespace apat
