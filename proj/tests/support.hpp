#pragma once

#include <catch_amalgamated.hpp>

#include "artinpat/artinpat.hpp"

namespace apat::test {

inline GroupPtr grp(std::string_view id) { return load_group(id); }

inline Elem elem(const GroupPtr& g, std::vector<int> e) { return g->from_exponents(e); }

inline Subgroup gen_by(const GroupPtr& g, std::vector<Elem> gens) { return closure(g, gens); }

inline std::vector<AbelianType> types(const std::vector<std::string>& v) {
  std::vector<AbelianType> out;
  for (const auto& s : v) out.push_back(AbelianType::parse(s));
  return out;
}

inline bool same_multiset(std::vector<AbelianType> a, std::vector<AbelianType> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline std::string canon(const std::string& digits) { return canonical_tkt(TktDigits::parse(digits)).to_string(); }

// catalog groups whose order is at most `bound`
inline std::vector<std::string> ids_up_to(std::size_t bound) {
  std::vector<std::string> out;
  for (const auto& e : catalog())
    if (e.order <= bound) out.push_back(e.id);
  return out;
}

}  // namespace apat::test
