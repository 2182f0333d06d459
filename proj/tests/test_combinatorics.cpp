#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "webcat/combinatorics.hpp"

using namespace webcat;
using namespace webcat::comb;

TEST_CASE("contingency enumeration") {
  auto single = enumerate_contingency(Composition({2}), Composition({2}));
  REQUIRE(single.size() == 1);
  CHECK(single[0].at(0, 0) == 2);

  auto two = enumerate_contingency(Composition({1, 1}), Composition({1, 1}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].at(0, 0) == 0);  // ascending row-major lex order
  CHECK(two[1].at(0, 0) == 1);

  auto three =
      enumerate_contingency(Composition({2, 1}), Composition({1, 1, 1}));
  CHECK(three.size() == 3);

  CHECK_THROWS_AS(enumerate_contingency(Composition({2}), Composition({3})),
                  invalid_input);
}

TEST_CASE("contingency transpose bijection up to weight 6") {
  std::vector<Composition> comps;
  std::function<void(int, std::vector<int>&)> rec = [&](int rem,
                                                        std::vector<int>& cur) {
    if (rem == 0) {
      comps.emplace_back(cur);
      return;
    }
    for (int p = 1; p <= rem; ++p) {
      cur.push_back(p);
      rec(rem - p, cur);
      cur.pop_back();
    }
  };
  for (int w = 1; w <= 6; ++w) {
    std::vector<Composition> of_w;
    std::vector<int> cur;
    comps.clear();
    rec(w, cur);
    of_w = comps;
    for (const auto& a : of_w)
      for (const auto& b : of_w) {
        auto ab = enumerate_contingency(a, b);
        auto ba = enumerate_contingency(b, a);
        REQUIRE(ab.size() == ba.size());
        // transposition lands in the other enumeration
        for (const auto& m : ab) {
          auto t = m.transposed();
          CHECK(std::find(ba.begin(), ba.end(), t) != ba.end());
        }
      }
  }
}

TEST_CASE("bounded partitions") {
  auto none = enumerate_bounded_partitions(0, std::nullopt, 5);
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());

  auto a = enumerate_bounded_partitions(2, 1, 2);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == Partition());
  CHECK(a[1] == Partition({1}));
  CHECK(a[2] == Partition({2}));

  auto b = enumerate_bounded_partitions(2, 2, 2);
  REQUIRE(b.size() == 4);
  CHECK(b[2] == Partition({2}));
  CHECK(b[3] == Partition({1, 1}));
}

TEST_CASE("partition counts match the generating function") {
  const int max_part = 3, d = 9;
  // coefficients of prod_{i<=max_part} 1/(1-q^i) up to q^d by direct DP
  std::vector<long> dp(d + 1, 0);
  dp[0] = 1;
  for (int i = 1; i <= max_part; ++i)
    for (int w = i; w <= d; ++w) dp[w] += dp[w - i];
  std::vector<long> counts(d + 1, 0);
  for (const auto& nu : enumerate_bounded_partitions(max_part, std::nullopt, d))
    ++counts[nu.weight()];
  for (int w = 0; w <= d; ++w) CHECK(counts[w] == dp[w]);
}

TEST_CASE("binomials and factorials") {
  CHECK(binomial(3, 1) == 3);
  CHECK(factorial(4) == 24);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(-2, 0) == 0);
  // Pascal recurrence
  for (int n = 1; n <= 12; ++n)
    for (int k = 1; k < n; ++k)
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("elementary symmetric polynomials") {
  auto e1 = elementary_symmetric(Partition({1}), 2);
  CHECK(e1 == IntPoly::variable(2, 0) + IntPoly::variable(2, 1));
  auto e2 = elementary_symmetric(Partition({2}), 2);
  CHECK(e2 == IntPoly::variable(2, 0) * IntPoly::variable(2, 1));
  auto e21 = elementary_symmetric(Partition({2, 1}), 2);
  CHECK(e21 == e2 * e1);
  CHECK_THROWS_AS(elementary_symmetric(Partition({3}), 2), invalid_input);

  // symmetry under adjacent transpositions
  auto p = elementary_symmetric(Partition({2, 1}), 3);
  for (int i = 0; i + 1 < 3; ++i) {
    std::vector<int> perm{0, 1, 2};
    std::swap(perm[i], perm[i + 1]);
    CHECK(p.permuted_vars(perm) == p);
  }
}
