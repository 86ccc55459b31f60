#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "artinpat/group.hpp"
#include "artinpat/subgroup.hpp"

namespace apat {

inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

// Prime p if n is a power p^k with k >= 1, else 0.
inline std::uint64_t prime_of_power(std::uint64_t n) {
  auto f = factorize(n);
  return f.size() == 1 ? f.front().first : 0;
}

// Invariant factors d_1 >= d_2 >= ... > 1 with d_{i+1} | d_i.
class AbelianType {
 public:
  AbelianType() = default;
  explicit AbelianType(std::vector<std::uint64_t> factors) : f_(std::move(factors)) { normalize(); }

  static AbelianType parse(std::string_view s) {
    auto bad = [&] { return Error("bad abelian type '" + std::string(s) + "'"); };
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw bad();
    std::vector<std::uint64_t> v;
    std::string_view body = s.substr(1, s.size() - 2);
    while (!body.empty()) {
      auto comma = body.find(',');
      auto tok = body.substr(0, comma);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      std::uint64_t x = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (ec != std::errc{} || p != tok.data() + tok.size() || x == 0) throw bad();
      v.push_back(x);
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return AbelianType(std::move(v));
  }

  const std::vector<std::uint64_t>& factors() const noexcept { return f_; }
  std::size_t rank() const noexcept { return f_.size(); }
  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (auto d : f_) o *= d;
    return o;
  }
  bool trivial() const noexcept { return f_.empty(); }

  // exponent list of the p-part, largest first
  std::vector<int> partition(std::uint64_t p) const {
    std::vector<int> out;
    for (auto d : f_) {
      int e = 0;
      while (d % p == 0) {
        d /= p;
        ++e;
      }
      if (e) out.push_back(e);
    }
    return out;
  }

  std::vector<std::uint64_t> primes() const {
    std::vector<std::uint64_t> ps;
    for (auto d : f_)
      for (auto [p, e] : factorize(d))
        if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    return ps;
  }

  std::string to_string() const {
    if (f_.empty()) return "(1)";
    std::string s = "(";
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(f_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const AbelianType&, const AbelianType&) = default;
  // total order for canonical sorting: by order, then factors
  friend std::strong_ordering operator<=>(const AbelianType& a, const AbelianType& b) {
    if (a.order() != b.order()) return a.order() <=> b.order();
    return a.f_ <=> b.f_;
  }

 private:
  // Accepts any list of cyclic orders and rewrites it as invariant factors.
  void normalize() {
    std::map<std::uint64_t, std::vector<int>> parts;
    for (auto d : f_)
      for (auto [p, e] : factorize(d)) parts[p].push_back(e);
    std::vector<std::uint64_t> out;
    for (auto& [p, es] : parts) {
      std::sort(es.rbegin(), es.rend());
      if (out.size() < es.size()) out.resize(es.size(), 1);
      for (std::size_t i = 0; i < es.size(); ++i)
        for (int k = 0; k < es[i]; ++k) out[i] *= p;
    }
    f_ = std::move(out);
  }

  std::vector<std::uint64_t> f_;
};

inline std::ostream& operator<<(std::ostream& os, const AbelianType& t) { return os << t.to_string(); }

// A is isomorphic to a quotient (equivalently a subgroup) of B.
inline bool type_precedes(const AbelianType& a, const AbelianType& b) {
  for (auto p : a.primes()) {
    auto pa = a.partition(p);
    auto pb = b.partition(p);
    if (pa.size() > pb.size()) return false;
    for (std::size_t i = 0; i < pa.size(); ++i)
      if (pa[i] > pb[i]) return false;
  }
  return true;
}

inline bool type_strictly_precedes(const AbelianType& a, const AbelianType& b) { return a != b && type_precedes(a, b); }

// Invariants from the sizes of the p-power images of each Sylow subgroup.
inline AbelianType abelian_type(const GroupPtr& g) {
  if (!is_abelian(g)) throw NotAbelian("abelian type requested for non-abelian group '" + g->name() + "'");
  std::vector<std::uint64_t> cyclic;
  for (auto [p, e] : factorize(g->order())) {
    std::vector<Elem> sylow;
    for (Elem x = 0; x < g->order(); ++x) {
      auto o = g->element_order(x);
      while (o % p == 0) o /= p;
      if (o == 1) sylow.push_back(x);
    }
    // sizes[k] = |A_p^{p^k}|
    std::vector<std::size_t> sizes{sylow.size()};
    std::vector<Elem> cur = sylow;
    while (cur.size() > 1) {
      std::vector<bool> seen(g->order(), false);
      std::vector<Elem> next;
      for (Elem x : cur) {
        Elem y = g->pow(x, static_cast<long>(p));
        if (!seen[y]) {
          seen[y] = true;
          next.push_back(y);
        }
      }
      cur = std::move(next);
      sizes.push_back(cur.size());
    }
    // r_k = number of cyclic factors of order >= p^k
    std::vector<int> r;
    for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
      int rk = 0;
      for (std::size_t q = sizes[k] / sizes[k + 1]; q > 1; q /= p) ++rk;
      r.push_back(rk);
    }
    r.push_back(0);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      std::uint64_t pk = 1;
      for (std::size_t t = 0; t <= k; ++t) pk *= p;
      for (int c = 0; c < r[k] - r[k + 1]; ++c) cyclic.push_back(pk);
    }
  }
  return AbelianType(std::move(cyclic));
}

}  // namespace apat
