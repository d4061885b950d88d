#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "tcanon/base_order.hpp"
#include "tcanon/canonicalizer.hpp"
#include "tcanon/errors.hpp"
#include "tcanon/signed_permutation.hpp"
#include "tcanon/stabilizer_chain.hpp"

namespace tcanon {

enum class ShortcutKind { symmetric, antisymmetric };

/// One symmetry line as it was declared.
struct SymmetryDeclaration {
  enum class Kind { generator, symmetric, antisymmetric };
  Kind kind = Kind::generator;
  std::vector<Point> slots;  // shortcut slots; empty for raw generators
  std::string text;          // the generator as written, for raw generators
};

/// Symmetries of a named tensor: T^{i_1..i_n} = e T^{s(i_1..i_n)} for
/// every generator s.
struct TensorSymmetrySpec {
  std::string name;
  std::size_t rank = 0;
  std::vector<SignedPermutation> generators;
  std::vector<SymmetryDeclaration> provenance;

  SymmetryGroup group() const { return SymmetryGroup(rank, generators); }
};

/// sign * name[labels[0], ..., labels[n-1]] with free indices only.
struct TensorConfiguration {
  std::string name;
  std::vector<std::string> labels;
  Sign sign = Sign::plus;

  friend bool operator==(const TensorConfiguration&,
                         const TensorConfiguration&) = default;
};

/// Either Zero or a signed index configuration.
class CanonicalForm {
 public:
  static CanonicalForm zero() { return CanonicalForm(); }
  static CanonicalForm of(TensorConfiguration config) {
    CanonicalForm f;
    f.config_ = std::move(config);
    return f;
  }

  bool is_zero() const noexcept { return !config_.has_value(); }
  /// Precondition: !is_zero().
  const TensorConfiguration& config() const { return config_.value(); }

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;

 private:
  CanonicalForm() = default;
  std::optional<TensorConfiguration> config_;
};

/// Text form used by the CLI: "-T[a,d,c,b]", "T[a,b]" or "0".
inline std::string to_string(const TensorConfiguration& c) {
  std::string out = c.sign == Sign::minus ? "-" : "";
  out += c.name;
  out += '[';
  for (std::size_t k = 0; k < c.labels.size(); ++k) {
    if (k) out += ',';
    out += c.labels[k];
  }
  out += ']';
  return out;
}

inline std::string to_string(const CanonicalForm& f) {
  return f.is_zero() ? "0" : to_string(f.config());
}

/// The standard configuration i_1..i_n: the labels in ascending byte order.
inline std::vector<std::string> standard_labels(
    std::span<const std::string> labels) {
  std::vector<std::string> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

/// (sign, pi) such that labels[k] = standard[k^pi].
inline SignedPermutation config_to_perm(const TensorSymmetrySpec& spec,
                                        const TensorConfiguration& config) {
  if (config.labels.size() != spec.rank) {
    throw DegreeError("tensor " + spec.name + " has rank " +
                      std::to_string(spec.rank) + " but " +
                      std::to_string(config.labels.size()) +
                      " indices were given");
  }
  const auto standard = standard_labels(config.labels);
  for (std::size_t k = 1; k < standard.size(); ++k) {
    if (standard[k] == standard[k - 1]) {
      throw FreeIndexViolation("index '" + standard[k] +
                               "' is repeated; only free indices are supported");
    }
  }
  std::vector<Point> images;
  images.reserve(spec.rank);
  for (const auto& label : config.labels) {
    auto it = std::lower_bound(standard.begin(), standard.end(), label);
    images.push_back(static_cast<Point>(it - standard.begin() + 1));
  }
  return SignedPermutation::from_images(config.sign, std::move(images));
}

/// labels[k] = standard[k^s], sign = s.sign.
inline TensorConfiguration perm_to_config(const TensorSymmetrySpec& spec,
                                          const SignedPermutation& s,
                                          std::span<const std::string> standard) {
  if (s.degree() != spec.rank || standard.size() != spec.rank) {
    throw DegreeError("tensor " + spec.name + " has rank " +
                      std::to_string(spec.rank));
  }
  TensorConfiguration c{spec.name, {}, s.sign()};
  c.labels.reserve(spec.rank);
  for (Point k = 1; k <= spec.rank; ++k) c.labels.push_back(standard[s[k] - 1]);
  return c;
}

/// Adjacent transpositions (slots[t], slots[t+1]), signed +1 for symmetric
/// and -1 for antisymmetric slots.
inline std::vector<SignedPermutation> shortcut_generators(
    ShortcutKind kind, std::span<const Point> slots, std::size_t rank) {
  if (slots.size() < 2) throw Error("a symmetry shortcut needs at least 2 slots");
  std::vector<bool> used(rank + 1, false);
  for (Point s : slots) {
    if (s < 1 || s > rank) {
      throw DegreeError("slot " + std::to_string(s) + " outside 1.." +
                        std::to_string(rank));
    }
    if (used[s]) throw Error("slot " + std::to_string(s) + " repeated");
    used[s] = true;
  }
  const Sign sign =
      kind == ShortcutKind::symmetric ? Sign::plus : Sign::minus;
  std::vector<SignedPermutation> gens;
  for (std::size_t t = 0; t + 1 < slots.size(); ++t) {
    std::vector<Point> images(rank);
    for (Point p = 1; p <= rank; ++p) images[p - 1] = p;
    std::swap(images[slots[t] - 1], images[slots[t + 1] - 1]);
    gens.push_back(SignedPermutation::from_images(sign, std::move(images)));
  }
  return gens;
}

/*!
 * Stabilizer chains keyed by (name, rank, generator multiset, base hint).
 * Lookups take a shared lock; insertion is exclusive.
 */
class ChainCache {
 public:
  std::shared_ptr<const StabilizerChain> get(const TensorSymmetrySpec& spec,
                                             std::span<const Point> hint) {
    Key key = make_key(spec, hint);
    {
      std::shared_lock lock(mutex_);
      auto it = chains_.find(key);
      if (it != chains_.end()) return it->second;
    }
    auto chain = std::make_shared<const StabilizerChain>(
        schreier_sims(spec.group(), hint));
    std::unique_lock lock(mutex_);
    return chains_.try_emplace(std::move(key), std::move(chain)).first->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return chains_.size();
  }

 private:
  using Key = std::tuple<std::string, std::size_t, std::vector<std::string>,
                         std::vector<Point>>;

  static Key make_key(const TensorSymmetrySpec& spec,
                      std::span<const Point> hint) {
    std::vector<std::string> gens;
    for (const auto& g : spec.generators) gens.push_back(to_cycle_string(g));
    std::sort(gens.begin(), gens.end());
    return {spec.name, spec.rank, std::move(gens),
            std::vector<Point>(hint.begin(), hint.end())};
  }

  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const StabilizerChain>> chains_;
};

inline ChainCache& default_chain_cache() {
  static ChainCache cache;
  return cache;
}

namespace detail {

inline std::vector<Point> checked_override(const TensorSymmetrySpec& spec,
                                           std::span<const Point> base) {
  if (base.size() != spec.rank) {
    throw DegreeError("base override must list all " +
                      std::to_string(spec.rank) + " points, got " +
                      std::to_string(base.size()));
  }
  (void)BaseOrder(std::vector<Point>(base.begin(), base.end()));  // validates
  return {base.begin(), base.end()};
}

struct Prepared {
  std::shared_ptr<const StabilizerChain> chain;
  BaseOrder order;
};

inline Prepared prepare(const TensorSymmetrySpec& spec,
                        const std::optional<std::vector<Point>>& base_override,
                        ChainCache& cache) {
  if (base_override) {
    auto hint = checked_override(spec, *base_override);
    return {cache.get(spec, hint), BaseOrder(hint)};
  }
  auto chain = cache.get(spec, {});
  return {chain, BaseOrder::from_base(chain->base(), spec.rank)};
}

}  // namespace detail

/*!
 * Canonical form of `config`. With a base override, the order follows the
 * given point list and the chain's base is drawn from it; otherwise the
 * order is the chain's base followed by the other points ascending.
 */
inline CanonicalForm canonicalize(
    const TensorSymmetrySpec& spec, const TensorConfiguration& config,
    const std::optional<std::vector<Point>>& base_override = std::nullopt,
    ChainCache& cache = default_chain_cache()) {
  const SignedPermutation input = config_to_perm(spec, config);
  auto [chain, order] = detail::prepare(spec, base_override, cache);
  if (chain->sign_residue()) return CanonicalForm::zero();
  const auto standard = standard_labels(config.labels);
  return CanonicalForm::of(
      perm_to_config(spec, canonical_rep(*chain, order, input).rep, standard));
}

/// Every configuration equal to `config` under the symmetry, sorted by the
/// order of the underlying permutations.
inline std::vector<TensorConfiguration> equivalent_configs(
    const TensorSymmetrySpec& spec, const TensorConfiguration& config,
    std::size_t cap = default_cap,
    const std::optional<std::vector<Point>>& base_override = std::nullopt,
    ChainCache& cache = default_chain_cache()) {
  const SignedPermutation input = config_to_perm(spec, config);
  auto [chain, order] = detail::prepare(spec, base_override, cache);
  auto coset = right_coset(*chain, input, cap);
  std::stable_sort(coset.begin(), coset.end(),
                   [&](const SignedPermutation& a, const SignedPermutation& b) {
                     return order.signed_perm_less(a, b);
                   });
  const auto standard = standard_labels(config.labels);
  std::vector<TensorConfiguration> out;
  out.reserve(coset.size());
  for (const auto& s : coset) out.push_back(perm_to_config(spec, s, standard));
  return out;
}

/// A maximal set of independent configurations over the given labels: the
/// canonical right transversal in index notation.
inline std::vector<TensorConfiguration> independent_configs(
    const TensorSymmetrySpec& spec, std::span<const std::string> labels,
    std::size_t cap = default_cap,
    const std::optional<std::vector<Point>>& base_override = std::nullopt,
    ChainCache& cache = default_chain_cache()) {
  TensorConfiguration probe{spec.name, {labels.begin(), labels.end()},
                            Sign::plus};
  config_to_perm(spec, probe);  // validates rank and distinct labels
  auto [chain, order] = detail::prepare(spec, base_override, cache);
  const auto standard = standard_labels(labels);
  std::vector<TensorConfiguration> out;
  for (const auto& s : independent_transversal(*chain, order, cap)) {
    out.push_back(perm_to_config(spec, s, standard));
  }
  return out;
}

}  // namespace tcanon
