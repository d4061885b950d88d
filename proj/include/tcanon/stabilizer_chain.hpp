#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tcanon/errors.hpp"
#include "tcanon/signed_permutation.hpp"

namespace tcanon {

using BigCount = boost::multiprecision::cpp_int;

/// Default bound on the size of any explicit enumeration.
inline constexpr std::size_t default_cap = 100000;

/*!
 * A subgroup of H x S_n given by generators. Whether (-1, id) lies in the
 * generated group is not checked here; see detect_zero().
 */
class SymmetryGroup {
 public:
  explicit SymmetryGroup(std::size_t degree,
                         std::vector<SignedPermutation> generators = {})
      : degree_(degree), generators_(std::move(generators)) {
    if (degree_ == 0) throw DegreeError("degree must be at least 1");
    for (const auto& g : generators_) {
      if (g.degree() != degree_) {
        throw DegreeError("generator " + to_cycle_string(g) + " has degree " +
                          std::to_string(g.degree()) + ", expected " +
                          std::to_string(degree_));
      }
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  std::span<const SignedPermutation> generators() const noexcept {
    return generators_;
  }

 private:
  std::size_t degree_;
  std::vector<SignedPermutation> generators_;
};

/// Generators together with their inverses, shared by Schreier vectors.
struct GeneratorStore {
  std::vector<SignedPermutation> elements;
  std::vector<SignedPermutation> inverses;

  explicit GeneratorStore(std::vector<SignedPermutation> gens)
      : elements(std::move(gens)) {
    inverses.reserve(elements.size());
    for (const auto& g : elements) inverses.push_back(inverse(g));
  }
};

/*!
 * Shallow Schreier vector over the orbit of `root`: each non-root orbit
 * point q records the generator g with q = r^g for some point r discovered
 * before q.
 */
class SchreierVector {
 public:
  static constexpr std::int32_t not_in_orbit = -1;
  static constexpr std::int32_t root_mark = -2;

  SchreierVector() = default;
  SchreierVector(std::shared_ptr<const GeneratorStore> store, std::size_t n,
                 Point root)
      : store_(std::move(store)), root_(root), labels_(n + 1, not_in_orbit) {
    labels_[root] = root_mark;
  }

  Point root() const noexcept { return root_; }
  std::size_t degree() const noexcept {
    return labels_.empty() ? 0 : labels_.size() - 1;
  }

  bool contains(Point q) const noexcept {
    return q >= 1 && q < labels_.size() && labels_[q] != not_in_orbit;
  }

  /// Index into generators() of the edge label into q, root_mark for the
  /// root, not_in_orbit otherwise.
  std::int32_t label(Point q) const noexcept {
    return q >= 1 && q < labels_.size() ? labels_[q] : not_in_orbit;
  }

  std::span<const SignedPermutation> generators() const noexcept {
    return store_->elements;
  }

  void set_label(Point q, std::int32_t generator) { labels_[q] = generator; }

  const GeneratorStore& store() const noexcept { return *store_; }

 private:
  std::shared_ptr<const GeneratorStore> store_;
  Point root_ = 0;
  std::vector<std::int32_t> labels_;
};

struct Orbit {
  std::vector<Point> points;  // BFS discovery order, root first
  SchreierVector vector;
};

namespace detail {

/// BFS orbit of root under the generators selected by `use`. Points are
/// processed in discovery order and generators in store order.
inline Orbit build_orbit(const std::shared_ptr<const GeneratorStore>& store,
                         std::span<const std::size_t> use, std::size_t n,
                         Point root) {
  if (root < 1 || root > n) {
    throw DegreeError("orbit root " + std::to_string(root) + " outside 1.." +
                      std::to_string(n));
  }
  Orbit orbit{{root}, SchreierVector(store, n, root)};
  for (std::size_t head = 0; head < orbit.points.size(); ++head) {
    const Point p = orbit.points[head];
    for (std::size_t g : use) {
      const Point q = store->elements[g][p];
      if (!orbit.vector.contains(q)) {
        orbit.vector.set_label(q, static_cast<std::int32_t>(g));
        orbit.points.push_back(q);
      }
    }
  }
  return orbit;
}

}  // namespace detail

/// Orbit of root under the unsigned action of gens, with its Schreier
/// vector. An empty generator list gives the trivial orbit {root}.
inline Orbit orbit_and_vector(std::span<const SignedPermutation> gens,
                              Point root, std::size_t n) {
  for (const auto& g : gens) {
    if (g.degree() != n) throw DegreeError("generator degree mismatch");
  }
  auto store = std::make_shared<const GeneratorStore>(
      std::vector<SignedPermutation>(gens.begin(), gens.end()));
  std::vector<std::size_t> use(gens.size());
  for (std::size_t k = 0; k < use.size(); ++k) use[k] = k;
  return detail::build_orbit(store, use, n, root);
}

inline Orbit orbit_and_vector(std::span<const SignedPermutation> gens,
                              Point root) {
  if (gens.empty()) {
    throw DegreeError("degree cannot be inferred from an empty generator list");
  }
  return orbit_and_vector(gens, root, gens.front().degree());
}

/// The element (e_w, w) of the generated group with root^w = q, built by
/// walking edge labels back to the root.
inline SignedPermutation trace(Point q, const SchreierVector& sv) {
  if (!sv.contains(q)) {
    throw Error("point " + std::to_string(q) + " is not in the orbit of " +
                std::to_string(sv.root()));
  }
  SignedPermutation w = SignedPermutation::identity(sv.degree());
  const GeneratorStore& store = sv.store();
  while (q != sv.root()) {
    const auto g = static_cast<std::size_t>(sv.label(q));
    w = compose(store.elements[g], w);
    q = store.inverses[g][q];
  }
  return w;
}

enum class Membership { in_group, in_group_opposite_sign, not_in_group };

/*!
 * Base, strong generating set and per-level data of a signed permutation
 * group. Level i holds K^(i), the strong generators fixing b_1..b_{i-1},
 * the basic orbit of b_i under them and its Schreier vector.
 *
 * When (-1, id) was found in the group, sign_residue() is true; the levels
 * then describe the unsigned projection and the order doubles.
 */
class StabilizerChain {
 public:
  struct Level {
    Point base_point = 0;
    std::vector<std::size_t> generators;  // indices into strong_generators()
    std::vector<Point> orbit;
    SchreierVector schreier;
    std::vector<std::int32_t> slot;  // point -> index into reps, or -1
    std::vector<SignedPermutation> reps;      // reps[slot[q]] = trace(q)
    std::vector<SignedPermutation> rep_invs;  // inverses of reps

    const SignedPermutation& rep(Point q) const { return reps[slot[q]]; }
  };

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Point>& base() const noexcept { return base_; }
  std::span<const SignedPermutation> strong_generators() const noexcept {
    return store_->elements;
  }
  const std::shared_ptr<const GeneratorStore>& generator_store()
      const noexcept {
    return store_;
  }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  bool sign_residue() const noexcept { return sign_residue_; }

  /// |G|, the order of the unsigned projection: the product of the basic
  /// orbit lengths.
  BigCount unsigned_order() const {
    BigCount order = 1;
    for (const auto& level : levels_) order *= level.orbit.size();
    return order;
  }

  /// |S|, doubled when (-1, id) belongs to the group.
  BigCount order() const {
    BigCount order = unsigned_order();
    if (sign_residue_) order *= 2;
    return order;
  }

  /// Sifts s through the levels. The residue has identity permutation iff
  /// the unsigned part of s lies in G.
  Membership membership(const SignedPermutation& s) const {
    if (s.degree() != degree_) throw DegreeError("membership: degree mismatch");
    SignedPermutation h = s;
    for (const auto& level : levels_) {
      const Point t = h[level.base_point];
      if (t == level.base_point) continue;
      if (level.slot[t] < 0) return Membership::not_in_group;
      h = compose(h, level.rep_invs[level.slot[t]]);
    }
    if (!h.is_identity_permutation()) return Membership::not_in_group;
    if (sign_residue_ || h.sign() == Sign::plus) return Membership::in_group;
    return Membership::in_group_opposite_sign;
  }

  bool contains(const SignedPermutation& s) const {
    return membership(s) == Membership::in_group;
  }

 private:
  friend StabilizerChain schreier_sims(const SymmetryGroup&,
                                       std::span<const Point>);

  StabilizerChain(std::size_t degree, std::vector<Point> base,
                  std::vector<SignedPermutation> strong, bool sign_residue)
      : degree_(degree),
        base_(std::move(base)),
        store_(std::make_shared<const GeneratorStore>(std::move(strong))),
        sign_residue_(sign_residue) {
    std::vector<std::size_t> active(store_->elements.size());
    for (std::size_t k = 0; k < active.size(); ++k) active[k] = k;
    for (Point b : base_) {
      Level level;
      level.base_point = b;
      level.generators = active;
      Orbit orbit = detail::build_orbit(store_, active, degree_, b);
      level.orbit = std::move(orbit.points);
      level.schreier = std::move(orbit.vector);
      level.slot.assign(degree_ + 1, -1);
      level.reps.reserve(level.orbit.size());
      for (Point q : level.orbit) {
        level.slot[q] = static_cast<std::int32_t>(level.reps.size());
        if (q == b) {
          level.reps.push_back(SignedPermutation::identity(degree_));
        } else {
          const auto g = static_cast<std::size_t>(level.schreier.label(q));
          const Point r = store_->inverses[g][q];
          level.reps.push_back(compose(level.rep(r), store_->elements[g]));
        }
      }
      level.rep_invs.reserve(level.reps.size());
      for (const auto& u : level.reps) level.rep_invs.push_back(inverse(u));
      std::vector<std::size_t> next;
      for (std::size_t g : active) {
        if (store_->elements[g].fixes(b)) next.push_back(g);
      }
      active = std::move(next);
      levels_.push_back(std::move(level));
    }
  }

  std::size_t degree_;
  std::vector<Point> base_;
  std::shared_ptr<const GeneratorStore> store_;
  std::vector<Level> levels_;
  bool sign_residue_;
};

namespace detail {

/*!
 * Deterministic incremental Schreier-Sims over a full point sequence (one
 * level per point, most of them trivial). Every pair (orbit point,
 * generator) at every level is tested exactly once: when the point enters
 * the orbit or when the generator enters the level.
 */
class SchreierSimsBuilder {
 public:
  SchreierSimsBuilder(std::size_t n, std::vector<Point> sequence)
      : n_(n), levels_(n) {
    for (std::size_t k = 0; k < n; ++k) {
      Level& level = levels_[k];
      level.base_point = sequence[k];
      level.slot.assign(n + 1, -1);
      level.slot[level.base_point] = 0;
      level.orbit.push_back(level.base_point);
      level.reps.push_back(SignedPermutation::identity(n));
      level.rep_invs.push_back(SignedPermutation::identity(n));
    }
  }

  void add_generator(const SignedPermutation& g) { sift_and_extend(g, 0); }

  std::vector<Point> base() const {
    std::vector<Point> out;
    for (const auto& level : levels_) {
      if (level.orbit.size() > 1) out.push_back(level.base_point);
    }
    return out;
  }

  std::vector<SignedPermutation> strong_generators() const {
    std::vector<SignedPermutation> out;
    for (const auto& level : levels_) {
      out.insert(out.end(), level.gens.begin(), level.gens.end());
    }
    return out;
  }

  bool sign_residue() const noexcept { return sign_residue_; }

 private:
  struct Level {
    Point base_point = 0;
    std::vector<SignedPermutation> gens;  // generators first added here
    std::vector<Point> orbit;
    std::vector<std::int32_t> slot;
    std::vector<SignedPermutation> reps;
    std::vector<SignedPermutation> rep_invs;
  };

  // h lies in the stabilizer of levels [0, from). Sift it; on failure add
  // the residue at the level where it dropped out.
  void sift_and_extend(SignedPermutation h, std::size_t from) {
    for (std::size_t j = from; j < n_; ++j) {
      Level& level = levels_[j];
      const Point t = h[level.base_point];
      if (t == level.base_point) continue;
      const std::int32_t s = level.slot[t];
      if (s < 0) {
        add_at(j, std::move(h));
        return;
      }
      h = compose(h, level.rep_invs[s]);
    }
    if (h.sign() == Sign::minus) sign_residue_ = true;
  }

  void add_at(std::size_t j, SignedPermutation g) {
    levels_[j].gens.push_back(g);
    for (std::size_t k = j + 1; k-- > 0;) {
      const std::size_t size = levels_[k].orbit.size();
      for (std::size_t idx = 0; idx < size; ++idx) {
        const Point gamma = levels_[k].orbit[idx];
        test(k, compose(levels_[k].reps[levels_[k].slot[gamma]], g));
      }
    }
  }

  // pi maps b_k somewhere; either record a new orbit point or sift the
  // Schreier element into the next level.
  void test(std::size_t k, SignedPermutation pi) {
    const Point t = pi[levels_[k].base_point];
    const std::int32_t s = levels_[k].slot[t];
    if (s >= 0) {
      SignedPermutation h = compose(pi, levels_[k].rep_invs[s]);
      sift_and_extend(std::move(h), k + 1);
      return;
    }
    {
      Level& level = levels_[k];
      level.slot[t] = static_cast<std::int32_t>(level.reps.size());
      level.orbit.push_back(t);
      level.rep_invs.push_back(inverse(pi));
      level.reps.push_back(pi);
    }
    const std::int32_t self = levels_[k].slot[t];
    for (std::size_t j = k; j < n_; ++j) {
      const std::size_t count = levels_[j].gens.size();
      for (std::size_t idx = 0; idx < count; ++idx) {
        test(k, compose(levels_[k].reps[self], levels_[j].gens[idx]));
      }
    }
  }

  std::size_t n_;
  std::vector<Level> levels_;
  bool sign_residue_ = false;
};

}  // namespace detail

/*!
 * Builds a base and strong generating set. Base points are chosen from
 * base_hint in order, then from the remaining points in increasing order;
 * a candidate becomes a base point iff the stabilizer of the earlier
 * candidates moves it. Sifting (-1, id) sets sign_residue() instead of
 * adding a generator.
 */
inline StabilizerChain schreier_sims(const SymmetryGroup& group,
                                     std::span<const Point> base_hint = {}) {
  const std::size_t n = group.degree();
  std::vector<Point> sequence;
  std::vector<bool> listed(n + 1, false);
  for (Point p : base_hint) {
    if (p < 1 || p > n) {
      throw DegreeError("base point " + std::to_string(p) + " outside 1.." +
                        std::to_string(n));
    }
    if (listed[p]) {
      throw DegreeError("base point " + std::to_string(p) + " listed twice");
    }
    listed[p] = true;
    sequence.push_back(p);
  }
  for (Point p = 1; p <= n; ++p) {
    if (!listed[p]) sequence.push_back(p);
  }

  detail::SchreierSimsBuilder builder(n, std::move(sequence));
  for (const auto& g : group.generators()) builder.add_generator(g);
  return StabilizerChain(n, builder.base(), builder.strong_generators(),
                         builder.sign_residue());
}

inline Membership membership(const StabilizerChain& chain,
                             const SignedPermutation& s) {
  return chain.membership(s);
}

/// True iff (-1, id) lies in the generated group, i.e. every tensor with
/// this symmetry vanishes identically.
inline bool detect_zero(const SymmetryGroup& group) {
  return schreier_sims(group).sign_residue();
}

namespace detail {

inline void check_cap(const BigCount& size, std::size_t cap,
                      const char* what) {
  if (size > cap) {
    throw CapExceeded(std::string(what) + " has " + size.str() +
                      " elements, more than the cap of " +
                      std::to_string(cap));
  }
}

}  // namespace detail

/// All elements of the group, each once, as products of transversal
/// elements taken from the deepest level up.
inline std::vector<SignedPermutation> enumerate_elements(
    const StabilizerChain& chain, std::size_t cap = default_cap) {
  detail::check_cap(chain.order(), cap, "group");
  std::vector<SignedPermutation> elements{
      SignedPermutation::identity(chain.degree())};
  const auto& levels = chain.levels();
  for (auto level = levels.rbegin(); level != levels.rend(); ++level) {
    std::vector<SignedPermutation> next;
    next.reserve(elements.size() * level->reps.size());
    for (const auto& u : level->reps) {
      for (const auto& e : elements) next.push_back(compose(e, u));
    }
    elements = std::move(next);
  }
  if (chain.sign_residue()) {
    const std::size_t count = elements.size();
    for (std::size_t k = 0; k < count; ++k) {
      elements.push_back(elements[k].negated());
    }
  }
  return elements;
}

/// { g x s : g in S }.
inline std::vector<SignedPermutation> right_coset(
    const StabilizerChain& chain, const SignedPermutation& s,
    std::size_t cap = default_cap) {
  if (s.degree() != chain.degree()) {
    throw DegreeError("right_coset: degree mismatch");
  }
  std::vector<SignedPermutation> coset = enumerate_elements(chain, cap);
  for (auto& g : coset) g = compose(g, s);
  return coset;
}

}  // namespace tcanon
