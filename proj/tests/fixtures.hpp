#pragma once

#include <set>
#include <string>
#include <vector>

#include "tcanon/signed_permutation.hpp"

namespace fixtures {

inline tcanon::SignedPermutation sp(const std::string& text, std::size_t n) {
  return tcanon::parse_cycles(text, n);
}

inline std::vector<tcanon::SignedPermutation> sps(
    const std::vector<std::string>& texts, std::size_t n) {
  std::vector<tcanon::SignedPermutation> out;
  for (const auto& t : texts) out.push_back(sp(t, n));
  return out;
}

/// Riemann-like symmetry without the cyclic identity: K = {-(1,2), +(1,3)(2,4)}.
inline std::vector<tcanon::SignedPermutation> riemann_generators() {
  return sps({"-(1,2)", "+(1,3)(2,4)"}, 4);
}

/// The eight signed elements generated by riemann_generators().
inline std::set<std::string> riemann_elements() {
  return {"+id",        "-(1,2)",      "-(3,4)",      "+(1,2)(3,4)",
          "+(1,3)(2,4)", "-(1,3,2,4)", "-(1,4,2,3)", "+(1,4)(2,3)"};
}

inline std::vector<tcanon::SignedPermutation> antisymmetric3_generators() {
  return sps({"-(1,2)", "-(1,3)", "-(2,3)"}, 3);
}

inline std::set<std::string> antisymmetric3_elements() {
  return {"+id", "-(1,2)", "-(1,3)", "-(2,3)", "+(1,2,3)", "+(1,3,2)"};
}

template <class Range>
std::set<std::string> cycle_strings(const Range& elements) {
  std::set<std::string> out;
  for (const auto& e : elements) out.insert(tcanon::to_cycle_string(e));
  return out;
}

}  // namespace fixtures
