#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "webcat/rep_oracle.hpp"

using namespace webcat;
using namespace webcat::rep;
using comb::Composition;
using comb::Partition;
using diag::Atom;
using diag::compose;
using diag::m_cross;
using diag::m_dot;
using diag::m_id;
using diag::m_merge;
using diag::m_split;
using diag::m_wdot;
using diag::Morphism;
using diag::tensor;

TEST_CASE("parameters") {
  auto p = RepParams::make(Composition({1, 2, 2}), {Rat(3), Rat(4)});
  CHECK(p.N == 5);
  CHECK(p.ell == 2);
  CHECK(p.u[0] == Rat(3) + 3 - 3);
  CHECK(p.u[1] == Rat(4) + 2 - 3);
  CHECK(p.box_row == std::vector<int>({0, 1, 1, 2, 2}));
  CHECK(p.box_col == std::vector<int>({0, 0, 1, 0, 1}));
  CHECK(p.left_of == std::vector<int>({-1, -1, 1, -1, 3}));

  auto q = RepParams::make(Composition({1, 2, 2}), {Rat(3), Rat(9)});
  CHECK(q.u[0] == p.u[0]);
  CHECK(q.u[1] == p.u[1] + 5);
}

TEST_CASE("web generator actions at N=2") {
  auto p = RepParams::rectangle(1, 2, {Rat(0), Rat(0)});
  REQUIRE(p.N == 2);
  auto m = act_web_generator(Atom::merge(1, 1), Composition({1, 1}), 0, p);
  WedgeSpace src(Composition({1, 1}), 2);
  WedgeSpace dst(Composition({2}), 2);
  long v12 = src.index({{0}, {1}});
  long v21 = src.index({{1}, {0}});
  long v11 = src.index({{0}, {0}});
  long w12 = dst.index({{0, 1}});
  CHECK(m.at(static_cast<int>(w12), static_cast<int>(v12)) == 1);
  CHECK(m.at(static_cast<int>(w12), static_cast<int>(v21)) == -1);
  for (int r = 0; r < m.rows(); ++r) CHECK(m.at(r, static_cast<int>(v11)) == 0);

  auto s = act_web_generator(Atom::split(1, 1), Composition({2}), 0, p);
  CHECK(s.at(static_cast<int>(v12), static_cast<int>(w12)) == 1);
  CHECK(s.at(static_cast<int>(v21), static_cast<int>(w12)) == -1);

  auto p3 = RepParams::rectangle(3, 1, {Rat(0)});
  auto c12 = act_web_generator(Atom::cross(1, 2), Composition({1, 2}), 0, p3);
  WedgeSpace s12(Composition({1, 2}), 3);
  WedgeSpace s21(Composition({2, 1}), 3);
  long a = s12.index({{0}, {1, 2}});
  long b = s21.index({{1, 2}, {0}});
  CHECK(c12.at(static_cast<int>(b), static_cast<int>(a)) == 1);
  WedgeSpace t(Composition({1, 1}), 3);
  auto c11 = act_web_generator(Atom::cross(1, 1), Composition({1, 1}), 0, p3);
  CHECK(c11.at(static_cast<int>(t.index({{1}, {0}})),
               static_cast<int>(t.index({{0}, {1}}))) == -1);
}

TEST_CASE("dot action on a single column") {
  auto p = RepParams::make(Composition({1, 1, 1}), {Rat(9)});
  auto d = act_dot(Composition({1}), 0, p);
  CHECK(d == linalg::SparseMat::identity(3).scaled(Rat(9)));
  auto g = nf::g_element(1, p.u[0]);
  CHECK(evaluate(g, p).is_zero());
  auto gg = tensor(nf::g_element(1, p.u[0]), m_id(2));
  CHECK(evaluate(gg, p).is_zero());
}

TEST_CASE("packet actions") {
  auto p = RepParams::rectangle(2, 2, {Rat(2), Rat(5)});
  auto i2 = act_packet(2, 0, Composition({2}), 0, p);
  WedgeSpace w2(Composition({2}), p.N);
  CHECK(i2 == linalg::SparseMat::identity(static_cast<int>(w2.dim())));
  CHECK(act_packet(1, 1, Composition({1, 1}), 1, p) ==
        act_dot(Composition({1, 1}), 1, p));
  auto direct = act_packet(2, 2, Composition({2}), 0, p);
  auto sugar = evaluate(diag::expand_sugar(m_wdot(2, 2)), p);
  CHECK(direct == sugar);
  auto direct1 = act_packet(2, 1, Composition({2}), 0, p);
  auto sugar1 = evaluate(diag::expand_sugar(m_wdot(2, 1)), p);
  CHECK(direct1 == sugar1);
  auto directf = act_packet(2, 1, Composition({1, 2}), 1, p);
  auto sugarf = evaluate(diag::expand_sugar(tensor(m_id(1), m_wdot(2, 1))), p);
  CHECK(directf == sugarf);
}

TEST_CASE("functoriality") {
  auto p = RepParams::rectangle(2, 2, {Rat(1), Rat(1001)});
  CHECK(evaluate(m_id(Composition({1, 2})), p) ==
        linalg::SparseMat::identity(
            static_cast<int>(WedgeSpace(Composition({1, 2}), p.N).dim())));
  std::vector<std::pair<Morphism, Morphism>> pairs = {
      {m_merge(1, 1), m_split(1, 1)},
      {m_split(1, 1), m_dot(2)},
      {tensor(m_dot(1), m_id(1)), m_cross(1, 1)},
  };
  for (auto& [f, g] : pairs)
    CHECK(evaluate(compose(f, g), p) == evaluate(f, p) * evaluate(g, p));
  CHECK(evaluate(compose(m_merge(1, 1), m_split(1, 1)), p) ==
        evaluate(m_id(2), p).scaled(2));
}

TEST_CASE("probe columns agree with full evaluation") {
  auto p = RepParams::rectangle(3, 2, {Rat(1), Rat(1001)});
  Morphism m = compose(m_split(2, 1), m_merge(2, 1));
  WedgeSpace src(m.source(), p.N);
  std::vector<long> cols = {0, 2, src.dim() - 1};
  auto probe = evaluate_on_columns(m, p, cols);
  auto full = evaluate(m, p);
  for (size_t k = 0; k < cols.size(); ++k)
    for (int i = 0; i < probe.rows(); ++i)
      CHECK(probe.at(i, static_cast<int>(k)) ==
            full.at(i, static_cast<int>(cols[k])));
}

TEST_CASE("oracle normalization matches the rewriting engine") {
  std::vector<Morphism> samples = {
      compose(m_merge(1, 1), m_split(1, 1)),
      compose(m_dot(1), m_dot(1)),
      compose(m_split(1, 1), m_merge(1, 1)),
      compose(tensor(m_dot(1), m_id(1)), m_cross(1, 1)),
      compose(m_merge(2, 1),
              compose(tensor(m_wdot(2, 1), m_id(1)), m_split(2, 1))),
      tensor(m_dot(1), m_dot(1)) + m_cross(1, 1).scaled(Rat(3, 2)),
  };
  for (const auto& m : samples) {
    auto direct = nf::normalize(m, Ring::Q);
    auto via = oracle_normalize(m);
    CHECK(direct == via);
  }
}

TEST_CASE("oracle normalization on random words") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 25; ++it) {
    Morphism m = m_id(Composition({1, 1, 1}));
    int deg = 0;
    int layers = 2 + static_cast<int>(rng() % 3);
    for (int l = 0; l < layers; ++l) {
      int kind = static_cast<int>(rng() % 2);
      if (kind == 0 && deg < 2) {
        int j = static_cast<int>(rng() % 3);
        Morphism layer = m_id(Composition());
        for (int q = 0; q < 3; ++q)
          layer = tensor(layer, q == j ? m_dot(1) : m_id(1));
        m = compose(layer, m);
        ++deg;
      } else {
        int i = static_cast<int>(rng() % 2);
        Morphism layer = i == 0 ? tensor(m_cross(1, 1), m_id(1))
                                : tensor(m_id(1), m_cross(1, 1));
        m = compose(layer, m);
      }
    }
    CHECK(nf::normalize(m, Ring::Q) == oracle_normalize(m, std::nullopt, rng()));
  }
}

TEST_CASE("hom ranks") {
  {
    nf::LevelParams L(2, {Rat(1), Rat(1001)});
    auto p = RepParams::rectangle(3, 2, {Rat(1), Rat(1001)});
    CHECK(hom_rank(Composition({1}), Composition({1}), L, p) == 2);
    CHECK(hom_rank(Composition({2}), Composition({2}), L, p) == 3);
  }
  {
    nf::LevelParams L(1, {Rat(1)});
    auto p = RepParams::rectangle(3, 1, {Rat(1)});
    CHECK(hom_rank(Composition({1, 1}), Composition({2}), L, p) == 1);
  }
}
