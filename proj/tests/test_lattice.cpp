#include "doctest.h"
#include "finloc/lattice.hpp"

using namespace finloc;

namespace {

LatPtr diamond() {
  return std::make_shared<const FinLattice>(validate_lattice(
      {"0", "a", "b", "1"},
      std::vector<std::pair<std::string, std::string>>{
          {"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}}));
}

}  // namespace

TEST_CASE("two-element chain validates") {
  auto l = chain(2);
  CHECK(l->size() == 2);
  CHECK(l->bottom() == 0);
  CHECK(l->top() == 1);
  CHECK(l->leq(0, 1));
  CHECK(!l->leq(1, 0));
}

TEST_CASE("diamond bounds are computed by brute force") {
  auto l = diamond();
  int a = l->index_of("a"), b = l->index_of("b");
  // Oracle: scan all four elements for the bounds.
  int glb = -1, lub = -1;
  for (int x = 0; x < 4; ++x) {
    if (l->leq(x, a) && l->leq(x, b)) {
      bool greatest = true;
      for (int y = 0; y < 4; ++y)
        if (l->leq(y, a) && l->leq(y, b) && !l->leq(y, x)) greatest = false;
      if (greatest) glb = x;
    }
    if (l->leq(a, x) && l->leq(b, x)) {
      bool least = true;
      for (int y = 0; y < 4; ++y)
        if (l->leq(a, y) && l->leq(b, y) && !l->leq(x, y)) least = false;
      if (least) lub = x;
    }
  }
  CHECK(l->meet(a, b) == glb);
  CHECK(l->join(a, b) == lub);
  CHECK(l->meet(a, b) == l->index_of("0"));
  CHECK(l->join(a, b) == l->index_of("1"));
}

TEST_CASE("discrete two-element poset is not a lattice") {
  CHECK_THROWS_AS(
      validate_lattice({"x", "y"}, std::vector<std::pair<int, int>>{}),
      NotALattice);
}

TEST_CASE("antisymmetry violations are rejected") {
  CHECK_THROWS_AS(validate_lattice({"x", "y"},
                                   std::vector<std::pair<int, int>>{{0, 1}, {1, 0}}),
                  NotAPoset);
}

TEST_CASE("order input closure: transitivity is computed") {
  auto l = validate_lattice({"0", "m", "1"},
                            std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(l.leq(0, 2));
}

TEST_CASE("lattice laws hold exhaustively on small corpus") {
  for (auto l : {chain(2), chain(3), chain(4), diamond()}) {
    for (int a = 0; a < l->size(); ++a) {
      CHECK(l->meet(a, a) == a);
      CHECK(l->join(a, a) == a);
      for (int b = 0; b < l->size(); ++b) {
        CHECK(l->meet(a, b) == l->meet(b, a));
        CHECK(l->join(a, b) == l->join(b, a));
        CHECK(l->meet(a, l->join(a, b)) == a);
        CHECK(l->join(a, l->meet(a, b)) == a);
        for (int c = 0; c < l->size(); ++c) {
          CHECK(l->meet(a, l->meet(b, c)) == l->meet(l->meet(a, b), c));
          CHECK(l->join(a, l->join(b, c)) == l->join(l->join(a, b), c));
        }
      }
    }
    CHECK(l->meet_all(0) == l->top());
    CHECK(l->join_all(0) == l->bottom());
  }
}

TEST_CASE("left adjoint of the identity is the identity") {
  auto l = chain(2);
  auto g = left_adjoint(MonotoneMap::identity(l));
  REQUIRE(g.has_value());
  CHECK((*g)(0) == 0);
  CHECK((*g)(1) == 1);
}

TEST_CASE("left adjoint of the 2-chain endpoints inclusion into 3-chain") {
  auto two = chain(2), three = chain(3);
  MonotoneMap f(two, three, {0, 2});
  auto g = left_adjoint(f);
  REQUIRE(g.has_value());
  // Exhaustive oracle over all 6 pairs: b <= f(x) <=> g(b) <= x.
  CHECK((*g)(0) == 0);
  CHECK((*g)(1) == 1);
  CHECK((*g)(2) == 1);
  CHECK(check_adjunction(*g, f));
}

TEST_CASE("3-chain collapse has adjoint status decided by the biconditional") {
  auto two = chain(2), three = chain(3);
  MonotoneMap f(three, two, {0, 1, 1});
  auto g = left_adjoint(f);
  // Oracle: try every monotone candidate g and test the biconditional.
  bool exists = false;
  for (int g0 = 0; g0 < 3 && !exists; ++g0)
    for (int g1 = g0; g1 < 3 && !exists; ++g1) {
      bool ok = true;
      int cand[2] = {g0, g1};
      for (int b = 0; b < 2 && ok; ++b)
        for (int x = 0; x < 3 && ok; ++x)
          if (two->leq(b, f(x)) != three->leq(cand[b], x)) ok = false;
      if (ok) exists = true;
    }
  CHECK(g.has_value() == exists);
  if (g) CHECK(check_adjunction(*g, f));
}

TEST_CASE("adjunction existence iff all meets preserved (small sweep)") {
  auto three = chain(3);
  auto two = chain(2);
  // Sweep all monotone maps 3-chain -> 2-chain.
  for (int t0 = 0; t0 < 2; ++t0)
    for (int t1 = t0; t1 < 2; ++t1)
      for (int t2 = t1; t2 < 2; ++t2) {
        MonotoneMap f(three, two, {t0, t1, t2});
        auto g = left_adjoint(f);
        CHECK(g.has_value() == preserves_all_meets(f));
        if (g) CHECK(preserves_all_joins(*g));
      }
}

TEST_CASE("check_adjunction: shape mismatch is an error") {
  auto two = chain(2), three = chain(3);
  MonotoneMap f(two, three, {0, 2});
  MonotoneMap g(two, two, {0, 1});
  CHECK_THROWS_AS(check_adjunction(g, f), ShapeMismatch);
}

TEST_CASE("constant adjunction pair on the 2-chain") {
  auto two = chain(2);
  MonotoneMap to_top(two, two, {1, 1});
  MonotoneMap to_bottom(two, two, {0, 0});
  // Oracle: 4-pair biconditional check.
  bool expect = true;
  for (int b = 0; b < 2; ++b)
    for (int x = 0; x < 2; ++x)
      if (two->leq(b, to_top(x)) != two->leq(to_bottom(b), x)) expect = false;
  CHECK(check_adjunction(to_bottom, to_top) == expect);
}
