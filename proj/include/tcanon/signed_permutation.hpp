#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcanon/errors.hpp"

namespace tcanon {

/// A point of {1, ..., n}. Points are 1-based at every public boundary.
using Point = std::uint32_t;

/// Element of H = ({+1, -1}, x).
enum class Sign : std::int8_t { plus = 1, minus = -1 };

constexpr Sign operator*(Sign a, Sign b) noexcept {
  return a == b ? Sign::plus : Sign::minus;
}
constexpr Sign operator-(Sign s) noexcept {
  return s == Sign::plus ? Sign::minus : Sign::plus;
}
constexpr int to_int(Sign s) noexcept { return static_cast<int>(s); }
constexpr char sign_char(Sign s) noexcept { return s == Sign::plus ? '+' : '-'; }

/*!
 * An element (e, pi) of H x S_n: a sign together with a bijection of
 * {1..n}. The sign is independent of the parity of pi.
 *
 * Products act left to right: in compose(a, b) the permutation of `a` is
 * applied first, so p^(a b) = (p^a)^b. This is the convention under which
 * the update "lambda := omega x lambda" of the canonicalizer reproduces the
 * textbook worked values.
 *
 * The permutation is stored as a full image array, so point action is O(1).
 */
class SignedPermutation {
 public:
  /// Identity of degree 0; only useful as a placeholder.
  SignedPermutation() = default;

  /// (+1, id) of degree n.
  static SignedPermutation identity(std::size_t n, Sign sign = Sign::plus) {
    if (n == 0) throw DegreeError("degree must be at least 1");
    SignedPermutation s;
    s.sign_ = sign;
    s.images_.resize(n);
    for (std::size_t k = 0; k < n; ++k) s.images_[k] = static_cast<Point>(k + 1);
    return s;
  }

  /// Builds from 1-based images: images[k-1] = k^pi. Throws unless the
  /// images form a bijection of {1..n}.
  static SignedPermutation from_images(Sign sign, std::vector<Point> images) {
    const std::size_t n = images.size();
    if (n == 0) throw DegreeError("degree must be at least 1");
    std::vector<bool> seen(n, false);
    for (Point p : images) {
      if (p < 1 || p > n) {
        throw DegreeError("image " + std::to_string(p) + " outside 1.." +
                          std::to_string(n));
      }
      if (seen[p - 1]) {
        throw DegreeError("image " + std::to_string(p) + " repeated");
      }
      seen[p - 1] = true;
    }
    SignedPermutation s;
    s.sign_ = sign;
    s.images_ = std::move(images);
    return s;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Sign sign() const noexcept { return sign_; }

  /// p^pi; the sign never affects point images.
  Point apply(Point p) const {
    if (p < 1 || p > images_.size()) {
      throw DegreeError("point " + std::to_string(p) + " outside 1.." +
                        std::to_string(images_.size()));
    }
    return images_[p - 1];
  }

  /// Unchecked point action for inner loops.
  Point operator[](Point p) const noexcept { return images_[p - 1]; }

  std::span<const Point> images() const noexcept { return images_; }

  bool fixes(Point p) const noexcept { return images_[p - 1] == p; }

  bool is_identity_permutation() const noexcept {
    for (std::size_t k = 0; k < images_.size(); ++k) {
      if (images_[k] != k + 1) return false;
    }
    return true;
  }

  bool is_identity() const noexcept {
    return sign_ == Sign::plus && is_identity_permutation();
  }

  /// Same permutation, opposite sign.
  SignedPermutation negated() const {
    SignedPermutation s = *this;
    s.sign_ = -sign_;
    return s;
  }

  /// Same permutation with the given sign.
  SignedPermutation with_sign(Sign sign) const {
    SignedPermutation s = *this;
    s.sign_ = sign;
    return s;
  }

  friend bool operator==(const SignedPermutation&,
                         const SignedPermutation&) = default;

  friend SignedPermutation compose(const SignedPermutation& a,
                                   const SignedPermutation& b);
  friend SignedPermutation inverse(const SignedPermutation& s);

 private:
  Sign sign_ = Sign::plus;
  std::vector<Point> images_;
};

inline SignedPermutation identity(std::size_t n) {
  return SignedPermutation::identity(n);
}

/// a x b: apply a, then b. Signs multiply.
inline SignedPermutation compose(const SignedPermutation& a,
                                 const SignedPermutation& b) {
  if (a.degree() != b.degree()) {
    throw DegreeError("cannot compose permutations of degree " +
                      std::to_string(a.degree()) + " and " +
                      std::to_string(b.degree()));
  }
  SignedPermutation r;
  r.sign_ = a.sign_ * b.sign_;
  r.images_.resize(a.images_.size());
  for (std::size_t k = 0; k < a.images_.size(); ++k) {
    r.images_[k] = b.images_[a.images_[k] - 1];
  }
  return r;
}

inline SignedPermutation inverse(const SignedPermutation& s) {
  SignedPermutation r;
  r.sign_ = s.sign_;
  r.images_.resize(s.images_.size());
  for (std::size_t k = 0; k < s.images_.size(); ++k) {
    r.images_[s.images_[k] - 1] = static_cast<Point>(k + 1);
  }
  return r;
}

inline Point apply(const SignedPermutation& s, Point p) { return s.apply(p); }

/// Disjoint-cycle form, e.g. "+(1,3)(2,4)", "-(1,2)", "+id". Each cycle
/// starts at its smallest point; cycles are ordered by that point.
inline std::string to_cycle_string(const SignedPermutation& s) {
  std::string out(1, sign_char(s.sign()));
  const std::size_t n = s.degree();
  std::vector<bool> done(n, false);
  bool any = false;
  for (Point start = 1; start <= n; ++start) {
    if (done[start - 1] || s[start] == start) continue;
    any = true;
    out += '(';
    Point p = start;
    bool first = true;
    while (!done[p - 1]) {
      done[p - 1] = true;
      if (!first) out += ',';
      out += std::to_string(p);
      first = false;
      p = s[p];
    }
    out += ')';
  }
  if (!any) out += "id";
  return out;
}

namespace detail {

class CycleParser {
 public:
  CycleParser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  SignedPermutation parse() {
    if (n_ == 0) throw DegreeError("degree must be at least 1");
    std::vector<Point> images(n_);
    for (std::size_t k = 0; k < n_; ++k) images[k] = static_cast<Point>(k + 1);
    std::vector<bool> used(n_, false);

    Sign sign = Sign::plus;
    skip_space();
    if (peek() == '+' || peek() == '-') {
      if (peek() == '-') sign = Sign::minus;
      ++pos_;
      skip_space();
    }
    if (text_.substr(pos_, 2) == "id") {
      pos_ += 2;
      skip_space();
      if (pos_ != text_.size()) fail("unexpected input after 'id'");
      return SignedPermutation::from_images(sign, std::move(images));
    }
    while (true) {
      skip_space();
      if (pos_ == text_.size()) break;
      if (peek() != '(') fail("expected '('");
      ++pos_;
      std::vector<Point> cycle;
      while (true) {
        skip_space();
        const std::size_t at = pos_;
        Point p = point();
        if (p > n_) {
          fail_at(at, "point " + std::to_string(p) + " exceeds degree " +
                          std::to_string(n_));
        }
        if (used[p - 1]) fail_at(at, "point " + std::to_string(p) + " repeated");
        used[p - 1] = true;
        cycle.push_back(p);
        skip_space();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      for (std::size_t t = 0; t < cycle.size(); ++t) {
        images[cycle[t] - 1] = cycle[(t + 1) % cycle.size()];
      }
    }
    return SignedPermutation::from_images(sign, std::move(images));
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  Point point() {
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > 0xffffffffULL) fail_at(start, "point too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a point");
    if (value == 0) fail_at(start, "points start at 1");
    return static_cast<Point>(value);
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    throw ParseError(what, 0, at + 1);
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `sign? cycle*` (or `sign? id`) at degree n. Unmentioned points
/// are fixed; "-" and "-id" both denote (-1, id).
inline SignedPermutation parse_cycles(std::string_view text, std::size_t n) {
  return detail::CycleParser(text, n).parse();
}

}  // namespace tcanon

template <>
struct std::hash<tcanon::SignedPermutation> {
  std::size_t operator()(const tcanon::SignedPermutation& s) const noexcept {
    std::size_t h = s.sign() == tcanon::Sign::plus ? 0x9e3779b9u : 0x7f4a7c15u;
    for (tcanon::Point p : s.images()) {
      h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
