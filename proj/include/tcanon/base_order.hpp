#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tcanon/errors.hpp"
#include "tcanon/signed_permutation.hpp"

namespace tcanon {

/*!
 * Total order on points induced by a list [b_1..b_m, l_1..l_{n-m}]: a point
 * is smaller when it comes earlier in the list. The order extends
 * lexicographically to point lists, and to permutations through the image
 * of the list. Signs are disregarded.
 */
class BaseOrder {
 public:
  BaseOrder() = default;

  /// Uses `points` verbatim; it must be a permutation of {1..n}.
  explicit BaseOrder(std::vector<Point> points) : points_(std::move(points)) {
    const std::size_t n = points_.size();
    if (n == 0) throw DegreeError("order over an empty point set");
    rank_.assign(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const Point p = points_[k];
      if (p < 1 || p > n) {
        throw DegreeError("point " + std::to_string(p) + " outside 1.." +
                          std::to_string(n));
      }
      if (rank_[p] != 0) {
        throw DegreeError("point " + std::to_string(p) + " listed twice");
      }
      rank_[p] = static_cast<Point>(k + 1);
    }
  }

  /// Base points first, then the remaining points in increasing order.
  static BaseOrder from_base(std::span<const Point> base, std::size_t n) {
    std::vector<Point> points(base.begin(), base.end());
    std::vector<bool> in_base(n + 1, false);
    for (Point b : base) {
      if (b < 1 || b > n) {
        throw DegreeError("base point " + std::to_string(b) + " outside 1.." +
                          std::to_string(n));
      }
      in_base[b] = true;
    }
    for (Point p = 1; p <= n; ++p) {
      if (!in_base[p]) points.push_back(p);
    }
    return BaseOrder(std::move(points));
  }

  /// Natural order 1 < 2 < ... < n.
  static BaseOrder natural(std::size_t n) { return from_base({}, n); }

  std::size_t degree() const noexcept { return points_.size(); }
  std::span<const Point> points() const noexcept { return points_; }

  /// 1-based position of p in the list.
  Point rank(Point p) const {
    check(p);
    return rank_[p];
  }

  bool point_less(Point p, Point q) const {
    check(p);
    check(q);
    return rank_[p] < rank_[q];
  }

  bool list_less(std::span<const Point> lhs, std::span<const Point> rhs) const {
    if (lhs.size() != rhs.size()) {
      throw DegreeError("cannot compare point lists of length " +
                        std::to_string(lhs.size()) + " and " +
                        std::to_string(rhs.size()));
    }
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      check(lhs[k]);
      check(rhs[k]);
      if (lhs[k] != rhs[k]) return rank_[lhs[k]] < rank_[rhs[k]];
    }
    return false;
  }

  /// s1 < s2 iff b^{s1} < b^{s2}, b being the ordered point list.
  bool signed_perm_less(const SignedPermutation& s1,
                        const SignedPermutation& s2) const {
    if (s1.degree() != degree() || s2.degree() != degree()) {
      throw DegreeError("permutation degree does not match the order");
    }
    for (Point b : points_) {
      const Point x = s1[b];
      const Point y = s2[b];
      if (x != y) return rank_[x] < rank_[y];
    }
    return false;
  }

  /// b^s, the image of the ordered point list.
  std::vector<Point> image_of(const SignedPermutation& s) const {
    std::vector<Point> out;
    out.reserve(points_.size());
    for (Point b : points_) out.push_back(s.apply(b));
    return out;
  }

  friend bool operator==(const BaseOrder& a, const BaseOrder& b) {
    return a.points_ == b.points_;
  }

 private:
  void check(Point p) const {
    if (p < 1 || p > points_.size()) {
      throw DegreeError("point " + std::to_string(p) + " outside 1.." +
                        std::to_string(points_.size()));
    }
  }

  std::vector<Point> points_;
  std::vector<Point> rank_;  // rank_[p] = position of p, 1-based
};

}  // namespace tcanon
