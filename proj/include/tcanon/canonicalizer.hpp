#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include "tcanon/base_order.hpp"
#include "tcanon/errors.hpp"
#include "tcanon/signed_permutation.hpp"
#include "tcanon/stabilizer_chain.hpp"

namespace tcanon {

/// Minimal representative (e_l, l) of a right coset S x (e_p, p), and the
/// images q_i = b_i^l of the base points.
struct CanonicalRep {
  SignedPermutation rep;
  std::vector<Point> base_image;

  friend bool operator==(const CanonicalRep&, const CanonicalRep&) = default;
};

/// State after one loop of the canonicalizer.
struct LoopStep {
  Point base_point = 0;
  std::vector<Point> orbit;        // Delta, BFS order
  std::vector<Point> orbit_image;  // Delta^lambda before the update
  std::size_t k = 0;               // 1-based position of the minimum
  Point p = 0;                     // k-th point of Delta
  SignedPermutation omega;         // trace(p, nu)
  SignedPermutation lambda;        // omega x lambda
  std::vector<SignedPermutation> remaining;  // K after dropping movers of b_i
};

/// Where each loop takes its basic orbit and trace from.
enum class OrbitSource {
  /// Rebuild Delta and its Schreier vector from the current generator set.
  recompute,
  /// Use the chain's stored level data (same values, less work).
  precomputed,
};

namespace detail {

inline CanonicalRep canonical_core(const StabilizerChain& chain,
                                   const BaseOrder& order,
                                   const SignedPermutation& input,
                                   OrbitSource source,
                                   std::vector<LoopStep>* steps) {
  const std::size_t n = chain.degree();
  if (input.degree() != n || order.degree() != n) {
    throw DegreeError("canonical_rep: degree mismatch");
  }
  const auto& store = chain.generator_store();
  SignedPermutation lambda = input;
  std::vector<std::size_t> gens(store->elements.size());
  for (std::size_t g = 0; g < gens.size(); ++g) gens[g] = g;

  CanonicalRep result;
  for (const auto& level : chain.levels()) {
    const Point b = level.base_point;
    Orbit local;
    const std::vector<Point>* orbit = &level.orbit;
    if (source == OrbitSource::recompute) {
      local = build_orbit(store, gens, n, b);
      orbit = &local.points;
    }

    std::size_t best = 0;
    for (std::size_t t = 1; t < orbit->size(); ++t) {
      if (order.rank(lambda[(*orbit)[t]]) <
          order.rank(lambda[(*orbit)[best]])) {
        best = t;
      }
    }
    const Point p = (*orbit)[best];
    SignedPermutation omega = source == OrbitSource::recompute
                                  ? trace(p, local.vector)
                                  : level.rep(p);

    LoopStep step;
    if (steps) {
      step.base_point = b;
      step.orbit = *orbit;
      for (Point q : *orbit) step.orbit_image.push_back(lambda[q]);
      step.k = best + 1;
      step.p = p;
      step.omega = omega;
    }

    lambda = compose(omega, lambda);
    std::erase_if(gens, [&](std::size_t g) { return !store->elements[g].fixes(b); });
    result.base_image.push_back(lambda[b]);

    if (steps) {
      step.lambda = lambda;
      for (std::size_t g : gens) step.remaining.push_back(store->elements[g]);
      steps->push_back(std::move(step));
    }
  }
  result.rep = std::move(lambda);
  return result;
}

}  // namespace detail

/*!
 * Canonical representative of the right coset S x input with respect to
 * `order`. Loop i replaces lambda by omega x lambda, where omega maps b_i
 * to the orbit point whose image under lambda is smallest, then drops the
 * generators that move b_i.
 *
 * `order` must rank every base point of the chain ahead of the points the
 * corresponding stabilizer moves; orders from BaseOrder::from_base(chain
 * base) and the hint used to build the chain both qualify.
 *
 * Throws ZeroTensorError when the group contains (-1, id).
 */
inline CanonicalRep canonical_rep(const StabilizerChain& chain,
                                  const BaseOrder& order,
                                  const SignedPermutation& input,
                                  std::vector<LoopStep>* steps = nullptr,
                                  OrbitSource source = OrbitSource::recompute) {
  if (chain.sign_residue()) {
    throw ZeroTensorError(
        "group contains (-1,id); every tensor with this symmetry is zero");
  }
  return detail::canonical_core(chain, order, input, source, steps);
}

inline Sign canonical_sign_of_coset(const StabilizerChain& chain,
                                    const BaseOrder& order,
                                    const SignedPermutation& input) {
  return canonical_rep(chain, order, input).rep.sign();
}

/*!
 * Canonical right transversal of G in S_n: the minimal representative of
 * every coset, sign +1, sorted by `order`. Walks the coset graph under
 * right multiplication by adjacent transpositions.
 */
inline std::vector<SignedPermutation> independent_transversal(
    const StabilizerChain& chain, const BaseOrder& order,
    std::size_t cap = default_cap) {
  const std::size_t n = chain.degree();
  BigCount factorial = 1;
  for (std::size_t k = 2; k <= n; ++k) factorial *= k;
  detail::check_cap(factorial / chain.unsigned_order(), cap, "transversal");

  auto canonical = [&](const SignedPermutation& s) {
    return detail::canonical_core(chain, order, s.with_sign(Sign::plus),
                                  OrbitSource::precomputed, nullptr)
        .rep.with_sign(Sign::plus);
  };
  std::vector<SignedPermutation> swaps;
  for (Point k = 1; k < n; ++k) {
    std::vector<Point> images(n);
    for (Point p = 1; p <= n; ++p) images[p - 1] = p;
    std::swap(images[k - 1], images[k]);
    swaps.push_back(SignedPermutation::from_images(Sign::plus, images));
  }

  std::vector<SignedPermutation> found{
      canonical(SignedPermutation::identity(n))};
  std::unordered_set<SignedPermutation> seen(found.begin(), found.end());
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& t : swaps) {
      SignedPermutation next = canonical(compose(found[head], t));
      if (seen.insert(next).second) found.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end(),
            [&](const SignedPermutation& a, const SignedPermutation& b) {
              return order.signed_perm_less(a, b);
            });
  return found;
}

}  // namespace tcanon
