#include <string>

#include "doctest.h"
#include "finloc/dsl.hpp"

using namespace finloc;

TEST_CASE("a frame block parses into a checked frame") {
  auto fs = parse_frames(
      "frame three-chain\n"
      "elements: 0 m 1\n"
      "order: 0<=m m<=1\n");
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].name == "three-chain");
  const Frame& f = *fs[0].frame;
  CHECK(f.size() == 3);
  CHECK(f.leq(f.index_of("0"), f.index_of("1")));
  CHECK(heyting(f, f.index_of("m"), f.index_of("0")) == f.index_of("0"));
}

TEST_CASE("lattice headers, comments and spaced order constraints parse") {
  auto fs = parse_frames(
      "# a diamond\n"
      "lattice d\n"
      "elements: 0 a b 1\n"
      "order: 0 <= a  0<=b\n"
      "  a<=1 b <= 1   # continuation line\n");
  REQUIRE(fs.size() == 1);
  const Frame& f = *fs[0].frame;
  CHECK(f.size() == 4);
  CHECK(f.meet(f.index_of("a"), f.index_of("b")) == f.index_of("0"));
}

TEST_CASE("several frame blocks in one file") {
  auto fs = parse_frames(
      "frame two\nelements: 0 1\norder: 0<=1\n"
      "frame one\nelements: x\n");
  CHECK(fs.size() == 2);
  CHECK(fs[1].frame->size() == 1);
}

TEST_CASE("frame parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_frames("frame f\nelements: a a\n"),
                       doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_frames("frame f\nelements: a b\norder: a<=c\n"),
                       doctest::Contains("unknown element"), ParseError);
  CHECK_THROWS_WITH_AS(parse_frames("frame f\nelements: a b\norder: a<=\n"),
                       doctest::Contains("dangling"), ParseError);
  CHECK_THROWS_AS(parse_frames("elements: a b\n"), ParseError);
  CHECK_THROWS_AS(parse_frames("frame f\norder: a<=b\n"), ParseError);
  CHECK_THROWS_AS(parse_frames("category c\nobjects: x\n"), ParseError);
}

TEST_CASE("a non-lattice order is rejected by validation, not parsing") {
  CHECK_THROWS_AS(parse_frames("frame f\nelements: a b\n"), NotALattice);
}

TEST_CASE("a category block with explicit composites parses") {
  auto cs = parse_categories(
      "category d\n"
      "objects: 0 a b 1\n"
      "arrows: f: 0->a  g: 0->b  h: a->1  k: b->1  d: 0->1\n"
      "compose: h.f = d  k.g = d\n");
  REQUIRE(cs.size() == 1);
  const FinCategory& c = *cs[0].category;
  CHECK(c.num_objects() == 4);
  CHECK(c.num_morphisms() == 9);  // four identities and five arrows
  int f = c.morphism_index("f"), h = c.morphism_index("h");
  CHECK(c.compose(h, f) == c.morphism_index("d"));
  CHECK(c.compose(c.identity(0), f) == -1);  // not composable
}

TEST_CASE("identities are implicit and compose entries may mention them") {
  auto cs = parse_categories(
      "category m\n"
      "objects: x\n"
      "arrows: e: x->x\n"
      "compose: e.e = e\n");
  const FinCategory& c = *cs[0].category;
  CHECK(c.num_morphisms() == 2);
  int e = c.morphism_index("e");
  CHECK(c.compose(e, e) == e);
  CHECK(c.compose(c.morphism_index("id_x"), e) == e);
}

TEST_CASE("a missing composite fails category validation with a witness") {
  CHECK_THROWS_AS(parse_categories("category c\n"
                                   "objects: x y z\n"
                                   "arrows: f: x->y g: y->z\n"),
                  AssocViolation);
}

TEST_CASE("category parse errors") {
  CHECK_THROWS_WITH_AS(parse_categories("category c\nobjects: x\n"
                                        "arrows: f: x->w\n"),
                       doctest::Contains("unknown object"), ParseError);
  CHECK_THROWS_WITH_AS(parse_categories("category c\nobjects: x\n"
                                        "arrows: e: x->x\ncompose: e.q = e\n"),
                       doctest::Contains("unknown arrow"), ParseError);
  CHECK_THROWS_WITH_AS(parse_categories("category c\nobjects: x\n"
                                        "arrows: junk here\n"),
                       doctest::Contains("malformed arrow"), ParseError);
}

TEST_CASE("a space block parses with braced opens") {
  auto ss = parse_spaces(
      "space sierpinski\n"
      "points: bot top\n"
      "opens: {} {top} {bot top}\n");
  REQUIRE(ss.size() == 1);
  const FinTopSpace& x = ss[0].space;
  CHECK(x.size() == 2);
  CHECK(x.num_opens() == 3);
  CHECK(x.is_open(subset_of(1)));
}

TEST_CASE("space errors: unknown point, bad topology") {
  CHECK_THROWS_WITH_AS(
      parse_spaces("space s\npoints: a\nopens: {} {a b}\n"),
      doctest::Contains("unknown point"), ParseError);
  CHECK_THROWS_AS(parse_spaces("space s\npoints: a b\nopens: {} {a}\n"),
                  NotATopology);
}

TEST_CASE("a category universe parses the W objects and tables") {
  auto u = parse_universe(
      "category d\n"
      "objects: 0 a b 1\n"
      "arrows: f: 0->a  g: 0->b  h: a->1  k: b->1  d: 0->1\n"
      "compose: h.f = d  k.g = d\n"
      "subcategory W: 0 a b 1\n"
      "products: a*b = 0  a*1 = a\n"
      "exponentials: b^a = b\n");
  REQUIRE(u.category.has_value());
  CHECK(u.frames.empty());
  CHECK(u.w_objects == std::vector<std::string>{"0", "a", "b", "1"});
  REQUIRE(u.products.size() == 2);
  CHECK(u.products[0].a == "a");
  CHECK(u.products[0].r == "0");
  REQUIRE(u.exponentials.size() == 1);
  CHECK(u.exponentials[0].a == "b");  // z in z^y
  CHECK(u.exponentials[0].b == "a");
}

TEST_CASE("a frame-list universe parses maps by value rows") {
  auto u = parse_universe(
      "frame two\nelements: 0 1\norder: 0<=1\n"
      "frame three\nelements: 0 m 1\norder: 0<=m m<=1\n"
      "maps:\n"
      "  i: two->three = 0 1\n");
  CHECK(!u.category.has_value());
  REQUIRE(u.frames.size() == 2);
  REQUIRE(u.maps.size() == 1);
  CHECK(u.maps[0].name == "i");
  CHECK(u.maps[0].src == "two");
  CHECK(u.maps[0].values == std::vector<std::string>{"0", "1"});
}

TEST_CASE("universe shape errors") {
  CHECK_THROWS_AS(parse_universe("category c\nobjects: x\n"), ParseError);
  CHECK_THROWS_AS(
      parse_universe("category c\nobjects: x\nsubcategory W: y\n"),
      UnknownObject);
  CHECK_THROWS_AS(parse_universe("space s\npoints: a\nopens: {} {a}\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_universe(""), ParseError);
}
