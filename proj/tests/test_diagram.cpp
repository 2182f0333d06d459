#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "webcat/parser.hpp"

using namespace webcat;
using namespace webcat::diag;
using comb::Composition;

TEST_CASE("compose basics") {
  CHECK(compose(m_id(2), m_id(2)) == m_id(2));
  auto digon = compose(m_merge(1, 1), m_split(1, 1));
  CHECK(digon.source() == Composition({2}));
  CHECK(digon.target() == Composition({2}));
  CHECK_THROWS_AS(compose(m_id(2), tensor(m_id(1), m_id(1))),
                  composition_error);
}

TEST_CASE("tensor basics") {
  CHECK(tensor(m_id(1), m_id(1)) == m_id(Composition({1, 1})));
  auto t = tensor(m_dot(1), m_id(1));
  REQUIRE(t.terms().size() == 1);
  CHECK(t.terms().begin()->first.layers().size() == 1);
  // two-layer against one-layer pads at the top
  auto two = compose(m_dot(1), m_dot(1));
  auto mixed = tensor(two, m_dot(1));
  CHECK(mixed.terms().begin()->first.layers().size() == 2);
}

TEST_CASE("degree") {
  CHECK(degree(m_id(3)) == 0);
  CHECK(degree(m_dot(2)) == 2);
  CHECK(degree(compose(m_wdot(3, 1), m_wdot(3, 2))) == 3);
  CHECK(degree(Morphism::zero(Composition({1}), Composition({1}))) < -1000);
}

TEST_CASE("interchange law on random compatible pairs") {
  std::mt19937 rng(5);
  auto rand_morphism = [&](int thickness) {
    switch (rng() % 4) {
      case 0: return m_id(thickness);
      case 1: return m_wdot(thickness, 1 + static_cast<int>(rng() % thickness));
      case 2:
        if (thickness >= 2)
          return compose(m_merge(1, thickness - 1), m_split(1, thickness - 1));
        return m_dot(1);
      default: return m_dot(thickness);
    }
  };
  for (int it = 0; it < 40; ++it) {
    int a = 1 + static_cast<int>(rng() % 3), b = 1 + static_cast<int>(rng() % 3);
    auto f = rand_morphism(a), h = rand_morphism(a);
    auto g = rand_morphism(b), k = rand_morphism(b);
    CHECK(compose(tensor(f, g), tensor(h, k)) ==
          tensor(compose(f, h), compose(g, k)));
  }
}

TEST_CASE("expand sugar") {
  CHECK(expand_sugar(m_wdot(2, 2)) == m_dot(2));
  CHECK(m_wdot(2, 0) == m_id(2));
  auto e = expand_sugar(m_wdot(2, 1));
  auto want = compose(m_merge(1, 1),
                      compose(tensor(m_dot(1), m_id(1)), m_split(1, 1)));
  CHECK(e == want);
}

TEST_CASE("reflect") {
  CHECK(reflect(m_merge(1, 1)) == m_split(1, 1));
  CHECK(reflect(m_dot(2)) == m_dot(2));
  auto m = compose(
      tensor(m_merge(2, 1), m_id(1)),
      compose(tensor(m_wdot(2, 1), m_id(Composition({1, 1}))),
              compose(tensor(m_cross(1, 2), m_id(1)),
                      tensor(m_id(1), m_split(2, 1)))));
  CHECK(reflect(reflect(m)) == m);
  CHECK(reflect(m).source() == m.target());
  CHECK(reflect(m).target() == m.source());
}

TEST_CASE("parse basics") {
  CHECK(parse("id(2)") == m_id(2));
  CHECK(parse("split(1,1) ; merge(1,1)") ==
        compose(m_merge(1, 1), m_split(1, 1)));
  CHECK(parse("merge(1,1) ; split(1,1)") ==
        compose(m_split(1, 1), m_merge(1, 1)));
  CHECK(parse("dot(1) @ id(1)") == tensor(m_dot(1), m_id(1)));
  CHECK(parse("2 * id(1)") == m_id(1).scaled(2));
  CHECK(parse("1/2 * id(1) + id(1)") == m_id(1).scaled(Rat(3, 2)));
  CHECK(parse("wdot(3,2)") == m_wdot(3, 2));
  CHECK(parse("packet(3,[2,1])") ==
        compose(m_wdot(3, 1), m_wdot(3, 2)));
  CHECK(parse("(id(1) + dot(1)) ; dot(1)") ==
        compose(m_dot(1), m_id(1) + m_dot(1)));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("merge(1,1) ; merge(1,1)"), parse_error);
  CHECK_THROWS_AS(parse("id(2"), parse_error);
  CHECK_THROWS_AS(parse("frob(2)"), parse_error);
  try {
    parse("id(2) ;\n id(3)");
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 1);
  }
}

TEST_CASE("render round trip") {
  std::vector<std::string> exprs = {
      "id(2)",
      "split(1,1) ; merge(1,1)",
      "dot(2) @ wdot(3,1)",
      "2 * (merge(1,1) ; split(1,1)) + cross(1,1)",
      "-3/4 * dot(1) + id(1)",
      "packet(2,[1,1]) ; dot(2)",
  };
  for (const auto& s : exprs) {
    Morphism m = parse(s);
    CHECK(parse(render(m)) == m);
  }
}
