#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "webcat/thin.hpp"

using namespace webcat;
using namespace webcat::thin;
using comb::IntPoly;
using comb::Partition;

TEST_CASE("swap straightening matches the defining relations") {
  // x_1 over a swap = swap then x_2, plus one
  Elem e = Elem::one(2).after_dot(0).after_swap(0);
  Elem want = Elem::one(2);
  want = Elem(2);
  want.add(perm_transposition(2, 0), {0, 1}, 1);
  want.add(perm_identity(2), {0, 0}, 1);
  CHECK(e.terms() == want.terms());

  // x_2 over a swap = swap then x_1, minus one
  Elem f = Elem::one(2).after_dot(1).after_swap(0);
  Elem want2(2);
  want2.add(perm_transposition(2, 0), {1, 0}, 1);
  want2.add(perm_identity(2), {0, 0}, -1);
  CHECK(f.terms() == want2.terms());

  // x_1 x_2 is central for the swap
  Elem g = Elem::one(2).after_dot(0).after_dot(1).after_swap(0);
  Elem want3(2);
  want3.add(perm_transposition(2, 0), {1, 1}, 1);
  CHECK(g.terms() == want3.terms());
}

TEST_CASE("digon expansion") {
  Elem d11 = digon(1, 1);
  CHECK(d11.terms().size() == 2);  // identity plus the swap
  // total number of permutation terms is binom(a+b, a)
  CHECK(digon(2, 1).terms().size() == 3);
  CHECK(digon(2, 2).terms().size() == 6);
  CHECK(digon(3, 2).terms().size() == 10);
}

TEST_CASE("h polynomials") {
  CHECK(hpoly(1, 1) == IntPoly::variable(1, 0));
  // hpoly(2,1) = x1 + x2 + 1
  IntPoly want = IntPoly::variable(2, 0) + IntPoly::variable(2, 1) +
                 IntPoly::constant(2, 1);
  CHECK(hpoly(2, 1) == want);
  CHECK(hpoly(2, 2) == IntPoly::variable(2, 0) * IntPoly::variable(2, 1));
  // leading part of hpoly(a, r) is e_r
  for (int a = 1; a <= 4; ++a)
    for (int r = 0; r <= a; ++r) {
      IntPoly h = hpoly(a, r);
      IntPoly top(a);
      for (auto& [m, c] : h.terms()) {
        int deg = 0;
        for (int x : m) deg += x;
        if (deg == r) top.add_term(m, c);
      }
      CHECK(top == comb::elementary_symmetric_single(r, a));
    }
}

TEST_CASE("balloon expansion ground cases") {
  // empty balloon = binom(a+b, a)
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b) {
      auto e = balloon_expand_core(Partition(), Partition(), a, b);
      REQUIRE(e.size() == 1);
      CHECK(e.begin()->first == Partition());
      CHECK(e.begin()->second == comb::binomial(a + b, a));
    }
  // one part on the left leg: binom(a+b-r, b) times the r-decoration
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int r = 1; r <= a; ++r) {
        auto e = balloon_expand_core(Partition({r}), Partition(), a, b);
        REQUIRE(e.size() == 1);
        CHECK(e.begin()->first == Partition({r}));
        CHECK(e.begin()->second == comb::binomial(a + b - r, b));
      }
  // full thin balloon with dots on both legs: 2 * top decoration
  auto f = balloon_expand_core(Partition({1}), Partition({1}), 1, 1);
  REQUIRE(f.size() == 1);
  CHECK(f.begin()->first == Partition({2}));
  CHECK(f.begin()->second == 2);
}

TEST_CASE("balloon row bound") {
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int r1 = 1; r1 <= a; ++r1)
        for (int r2 = 1; r2 <= b; ++r2) {
          auto e = balloon_expand_core(Partition({r1}), Partition({r2}), a, b);
          for (auto& [nu, c] : e) CHECK(nu.length() <= 1);
        }
}

TEST_CASE("single strand level reduction") {
  // level one at u=0 kills the dot
  Level L1{1, {Rat(0)}};
  auto r = cyclotomic_reduce_packet(1, Partition({1}), L1);
  CHECK(r.empty());
  // level one at u=u1 sends the dot to u1
  Level L2{1, {Rat(5)}};
  auto r2 = cyclotomic_reduce_packet(1, Partition({1}), L2);
  REQUIRE(r2.size() == 1);
  CHECK(r2.begin()->first == Partition());
  CHECK(r2.begin()->second == Rat(5));
  // level two: x^2 = (u1+u2)x - u1 u2
  Level L3{2, {Rat(0), Rat(1)}};
  auto r3 = cyclotomic_reduce_packet(1, Partition({1, 1}), L3);
  REQUIRE(r3.size() == 1);
  CHECK(r3.begin()->first == Partition({1}));
  CHECK(r3.begin()->second == Rat(1));
}

TEST_CASE("thick strand level reduction stays short") {
  Level L{2, {Rat(1), Rat(3)}};
  for (int a = 2; a <= 3; ++a) {
    auto red = cyclotomic_reduce_packet(a, Partition({1, 1, 1}), L);
    for (auto& [nu, c] : red) CHECK(nu.length() <= 1);
  }
}
