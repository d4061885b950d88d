#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "tcanon/signed_permutation.hpp"

using namespace tcanon;
using fixtures::sp;

TEST_CASE("identity", "[perm]") {
  auto id3 = identity(3);
  CHECK(id3.sign() == Sign::plus);
  CHECK(std::vector<Point>(id3.images().begin(), id3.images().end()) ==
        std::vector<Point>{1, 2, 3});
  CHECK(identity(1).degree() == 1);
  CHECK_THROWS_AS(identity(0), DegreeError);

  auto s = sp("-(1,4,2)", 4);
  CHECK(compose(identity(4), s) == s);
  CHECK(compose(s, identity(4)) == s);
}

TEST_CASE("compose acts left to right", "[perm]") {
  CHECK(compose(sp("+(1,3)(2,4)", 4), sp("+(1,2,3)", 4)) == sp("+(2,4,3)", 4));
  CHECK(compose(sp("-(3,4)", 4), sp("+(2,4,3)", 4)) == sp("-(2,4)", 4));
  CHECK_THROWS_AS(compose(identity(3), identity(4)), DegreeError);
}

TEST_CASE("inverse", "[perm]") {
  CHECK(inverse(sp("+(1,2,3)", 3)) == sp("+(1,3,2)", 3));
  CHECK(inverse(sp("-(1,2)", 2)) == sp("-(1,2)", 2));
  CHECK(inverse(identity(5)) == identity(5));
  auto s = sp("-(1,5,2)(3,4)", 5);
  CHECK(compose(s, inverse(s)) == identity(5));
  CHECK(inverse(s).sign() == Sign::minus);
}

TEST_CASE("apply", "[perm]") {
  CHECK(apply(sp("-(1,2)", 2), 1) == 2);
  CHECK(apply(sp("+(1,3)(2,4)", 4), 1) == 3);
  for (Point p = 1; p <= 4; ++p) CHECK(apply(identity(4), p) == p);
  CHECK_THROWS_AS(apply(identity(4), 0), DegreeError);
  CHECK_THROWS_AS(apply(identity(4), 5), DegreeError);
}

TEST_CASE("parse_cycles", "[perm][parse]") {
  auto a = parse_cycles("-(1,2)", 4);
  CHECK(a.sign() == Sign::minus);
  CHECK(std::vector<Point>(a.images().begin(), a.images().end()) ==
        std::vector<Point>{2, 1, 3, 4});
  auto b = parse_cycles("+(1,3)(2,4)", 4);
  CHECK(b.sign() == Sign::plus);
  CHECK(std::vector<Point>(b.images().begin(), b.images().end()) ==
        std::vector<Point>{3, 4, 1, 2});
  CHECK(parse_cycles("id", 3) == identity(3));
  CHECK(parse_cycles("", 3) == identity(3));
  CHECK(parse_cycles("-id", 3) == identity(3).negated());
  CHECK(parse_cycles("-", 3) == identity(3).negated());
  CHECK(parse_cycles("  - ( 1 , 3 ) ( 2 ) ", 3) == sp("-(1,3)", 3));
}

TEST_CASE("parse_cycles rejects bad input with a position", "[perm][parse]") {
  CHECK_THROWS_AS(parse_cycles("(1,2)(2,3)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycles("(1,5)", 4), ParseError);
  CHECK_THROWS_AS(parse_cycles("(1,2", 4), ParseError);
  CHECK_THROWS_AS(parse_cycles("(0,1)", 4), ParseError);
  CHECK_THROWS_AS(parse_cycles("+-(1,2)", 4), ParseError);
  CHECK_THROWS_AS(parse_cycles("id(1,2)", 4), ParseError);
  try {
    parse_cycles("+(1,2)(3,2)", 4);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 10);
  }
}

TEST_CASE("to_cycle_string", "[perm]") {
  CHECK(to_cycle_string(identity(3)) == "+id");
  CHECK(to_cycle_string(identity(3).negated()) == "-id");
  CHECK(to_cycle_string(sp("(3,1)(4,2)", 4)) == "+(1,3)(2,4)");
  CHECK(to_cycle_string(sp("-(2,4,3)", 4)) == "-(2,4,3)");
}

TEST_CASE("group laws on random signed permutations", "[perm][property]") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    auto a = oracle::to_lib(oracle::random_perm(n, rng));
    auto b = oracle::to_lib(oracle::random_perm(n, rng));
    auto c = oracle::to_lib(oracle::random_perm(n, rng));
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    const auto minus_id = identity(n).negated();
    CHECK(compose(minus_id, a) == compose(a, minus_id));
    CHECK(compose(a, inverse(a)) == identity(n));
    CHECK(parse_cycles(to_cycle_string(a), n) == a);
  }
}

TEST_CASE("action law holds for all pairs up to degree 5", "[perm][property]") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto perms = oracle::all_perms(n);
    for (const auto& x : perms) {
      for (const auto& y : perms) {
        auto a = oracle::to_lib(x);
        auto b = oracle::to_lib(y).negated();
        auto ab = compose(a, b);
        for (Point p = 1; p <= n; ++p) {
          REQUIRE(apply(ab, p) == apply(b, apply(a, p)));
        }
        REQUIRE(ab.sign() == Sign::minus);
      }
    }
  }
}
