#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "artinpat/error.hpp"
#include "artinpat/presentation.hpp"

namespace apat {

using Exponents = std::vector<int>;

inline std::string exponents_to_string(std::span<const int> a) {
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0) continue;
    if (!out.empty()) out += ' ';
    out += 'g' + std::to_string(k + 1);
    if (a[k] != 1) out += '^' + std::to_string(a[k]);
  }
  return out.empty() ? "id" : out;
}

inline std::size_t default_max_order() {
  if (const char* env = std::getenv("APAT_MAX_ORDER")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 100000;
}

// Collection from the left. Relation words are stored in normal form with
// non-negative exponents; negative input exponents go through precomputed
// inverses of the generators.
class Collector {
 public:
  explicit Collector(PcPresentation pres) : pres_(std::move(pres)) {
    const int n = pres_.rank();
    power_.assign(n, {});
    conj_.assign(n, std::vector<Word>(n));
    inverse_.assign(n, {});
    // Level i only needs relations of generators above i.
    for (int i = n - 1; i >= 0; --i) {
      power_[i] = to_word(collect(pres_.power[i]));
      for (int j = i + 1; j < n; ++j) {
        const auto& c = pres_.conj[j][i];
        conj_[j][i] = c ? to_word(collect(*c)) : Word{{j, 1}};
      }
      Exponents a(n, 0);
      a[i] = pres_.orders[i] - 1;
      for (const auto& s : inverse_of_normal(power_[i])) multiply(a, s.gen, s.exp);
      inverse_[i] = to_word(a);
    }
  }

  const PcPresentation& presentation() const noexcept { return pres_; }
  int rank() const noexcept { return pres_.rank(); }
  std::span<const int> orders() const noexcept { return pres_.orders; }

  Exponents identity() const { return Exponents(rank(), 0); }

  Exponents collect(const Word& w) const {
    Exponents a = identity();
    multiply(a, w);
    return a;
  }

  void multiply(Exponents& a, const Word& w) const {
    for (const auto& s : w) multiply(a, s.gen, s.exp);
  }

  // a <- a * g_gen^exp
  void multiply(Exponents& a, int gen, long exp) const {
    if (exp == 0) return;
    if (exp < 0) {
      for (long k = 0; k < -exp; ++k)
        for (const auto& s : inverse_[gen]) push_and_run(a, s.gen, s.exp);
      return;
    }
    push_and_run(a, gen, exp);
  }

  void multiply(Exponents& a, std::span<const int> b) const {
    for (int k = 0; k < rank(); ++k)
      if (b[k]) multiply(a, k, b[k]);
  }

  Exponents inverse(std::span<const int> a) const {
    Exponents r = identity();
    for (int k = rank() - 1; k >= 0; --k)
      for (int t = 0; t < a[k]; ++t)
        for (const auto& s : inverse_[k]) multiply(r, s.gen, s.exp);
    return r;
  }

  const Word& power_word(int i) const { return power_[i]; }
  const Word& conj_word(int j, int i) const { return conj_[j][i]; }

  static Word to_word(std::span<const int> a) {
    Word w;
    for (int k = 0; k < static_cast<int>(a.size()); ++k)
      if (a[k]) w.push_back({k, a[k]});
    return w;
  }

 private:
  Word inverse_of_normal(const Word& w) const {
    Word r;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      for (long t = 0; t < it->exp; ++t) r.insert(r.end(), inverse_[it->gen].begin(), inverse_[it->gen].end());
    return r;
  }

  struct Pending {
    int gen;
    long count;
  };

  void push_word(std::vector<Pending>& stack, const Word& w) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it) stack.push_back({it->gen, it->exp});
  }

  void push_and_run(Exponents& a, int gen, long exp) const {
    const int n = rank();
    std::vector<Pending> stack;
    stack.push_back({gen, exp});
    Exponents tail(n);
    while (!stack.empty()) {
      auto& top = stack.back();
      const int g = top.gen;
      if (--top.count == 0) stack.pop_back();
      int h = n - 1;
      while (h > g && a[h] == 0) --h;
      if (h == g) {
        // nothing to move past: g lands in place
        if (++a[g] == pres_.orders[g]) {
          a[g] = 0;
          push_word(stack, power_[g]);
        }
        continue;
      }
      // a = P g^{a_g} Q with Q over generators above g; a*g = P g^{a_g+1} Q^g
      for (int j = g + 1; j < n; ++j) {
        tail[j] = a[j];
        a[j] = 0;
      }
      bool wrap = ++a[g] == pres_.orders[g];
      if (wrap) a[g] = 0;
      for (int j = n - 1; j > g; --j)
        for (int t = 0; t < tail[j]; ++t) push_word(stack, conj_[j][g]);
      if (wrap) push_word(stack, power_[g]);
    }
  }

  PcPresentation pres_;
  std::vector<Word> power_;
  std::vector<std::vector<Word>> conj_;
  std::vector<Word> inverse_;
};

// Dense ids for normal forms: mixed radix with g_1 most significant.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::span<const int> orders) : orders_(orders.begin(), orders.end()), stride_(orders.size()) {
    std::size_t s = 1;
    for (std::size_t k = orders_.size(); k-- > 0;) {
      stride_[k] = s;
      s *= static_cast<std::size_t>(orders_[k]);
    }
    size_ = s;
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t stride(int k) const { return stride_[k]; }

  std::uint32_t id(std::span<const int> a) const {
    std::size_t v = 0;
    for (std::size_t k = 0; k < a.size(); ++k) v += static_cast<std::size_t>(a[k]) * stride_[k];
    return static_cast<std::uint32_t>(v);
  }

  Exponents exponents(std::uint32_t id) const {
    Exponents a(orders_.size());
    for (std::size_t k = 0; k < orders_.size(); ++k) {
      a[k] = static_cast<int>(id / stride_[k]);
      id %= static_cast<std::uint32_t>(stride_[k]);
    }
    return a;
  }

 private:
  std::vector<int> orders_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 1;
};

struct ConsistencyReport {
  bool consistent = false;
  std::size_t claimed_order = 1;  // product of relative orders
  std::string witness;            // empty when consistent
};

// Right-action tables R_k[x] = id(x * g_k) on the claimed normal forms.
struct GeneratorAction {
  MixedRadix radix;
  std::vector<std::vector<std::uint32_t>> right;
};

inline GeneratorAction generator_action(const Collector& c) {
  GeneratorAction act{MixedRadix(c.orders()), {}};
  const std::size_t N = act.radix.size();
  act.right.assign(c.rank(), std::vector<std::uint32_t>(N));
  for (std::uint32_t x = 0; x < N; ++x) {
    auto a = act.radix.exponents(x);
    for (int k = 0; k < c.rank(); ++k) {
      auto b = a;
      c.multiply(b, k, 1);
      act.right[k][x] = act.radix.id(b);
    }
  }
  return act;
}

namespace detail {

inline std::uint32_t apply_word(const GeneratorAction& act, std::uint32_t x, const Word& w) {
  for (const auto& s : w)
    for (long t = 0; t < s.exp; ++t) x = act.right[s.gen][x];
  return x;
}

}  // namespace detail

// The presentation defines a group of order prod e_i exactly when right
// multiplication by the generators permutes the normal forms and those
// permutations satisfy the defining relations.
inline ConsistencyReport check_consistency(const Collector& c, const GeneratorAction& act) {
  ConsistencyReport rep;
  rep.claimed_order = act.radix.size();
  const std::size_t N = act.radix.size();
  const int n = c.rank();
  auto label = [&](std::uint32_t x) { return exponents_to_string(act.radix.exponents(x)); };
  for (int k = 0; k < n; ++k) {
    std::vector<bool> hit(N, false);
    for (std::uint32_t x = 0; x < N; ++x) {
      auto y = act.right[k][x];
      if (hit[y]) {
        rep.witness = "right multiplication by g" + std::to_string(k + 1) + " is not injective (image " + label(y) + " repeated)";
        return rep;
      }
      hit[y] = true;
    }
  }
  for (std::uint32_t x = 0; x < N; ++x) {
    for (int i = 0; i < n; ++i) {
      std::uint32_t lhs = x;
      for (int t = 0; t < c.orders()[i]; ++t) lhs = act.right[i][lhs];
      std::uint32_t rhs = detail::apply_word(act, x, c.power_word(i));
      if (lhs != rhs) {
        rep.witness = "power relation of g" + std::to_string(i + 1) + " fails at " + label(x) + ": " + label(lhs) + " vs " + label(rhs);
        return rep;
      }
      for (int j = i + 1; j < n; ++j) {
        // g_j g_i = g_i g_j^{g_i}
        std::uint32_t l = act.right[i][act.right[j][x]];
        std::uint32_t r = detail::apply_word(act, act.right[i][x], c.conj_word(j, i));
        if (l != r) {
          rep.witness = "conjugate relation g" + std::to_string(j + 1) + "^g" + std::to_string(i + 1) + " fails at " + label(x) + ": " + label(l) + " vs " + label(r);
          return rep;
        }
      }
    }
  }
  rep.consistent = true;
  return rep;
}

inline ConsistencyReport check_consistency(const PcPresentation& p, std::size_t max_order = default_max_order()) {
  std::size_t claimed = 1;
  for (int e : p.orders) {
    claimed *= static_cast<std::size_t>(e);
    if (claimed > max_order) throw BoundExceeded("group order exceeds enumeration bound " + std::to_string(max_order));
  }
  Collector c(p);
  return check_consistency(c, generator_action(c));
}

}  // namespace apat
