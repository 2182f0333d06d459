#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "webcat/normalizer.hpp"
#include "webcat/rules.hpp"

using namespace webcat;
using namespace webcat::rules;
using comb::Composition;

TEST_CASE("catalog shape") {
  const auto& rules = catalog();
  REQUIRE(rules.size() == 14);
  CHECK(rules.front().id == "R1");
  CHECK(rules.back().id == "R14");
  CHECK(rules.back().ring_requirement == Ring::Q);
}

TEST_CASE("specific instances") {
  // split-then-merge collapse at a=b=1 carries coefficient two
  for (const auto& inst : catalog()[2].instances(1)) {
    CHECK(inst.lhs.source() == Composition({2}));
    REQUIRE(inst.rhs.terms().size() == 1);
    CHECK(inst.rhs.terms().begin()->second == 2);
  }
  // merge-then-split at all labels one: identity plus crossing
  auto r2 = catalog()[1].instances(1);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].rhs.terms().size() == 2);
}

TEST_CASE("ring requirement") {
  auto p = rep::RepParams::rectangle(2, 2, rep::RepParams::default_twist(2));
  CHECK_THROWS_AS(check_rule(catalog()[13], 2, p, Ring::Z), ring_error);
}

TEST_CASE("rule suite passes at labels up to two") {
  auto p = rep::RepParams::rectangle(3, 2, rep::RepParams::default_twist(2));
  for (const auto& rule : catalog()) {
    auto report = check_rule(rule, 2, p);
    INFO(rule.id);
    for (auto& f : report.failures) { INFO(f); }
    CHECK(report.ok());
    CHECK(report.checked > 0);
  }
}

TEST_CASE("decoration rules respect the degree filtration") {
  // Every right-hand term has degree at most the left degree. The crossing
  // and digon moves have a single term of top degree; the split and merge
  // moves spread the index across the legs at top degree.
  for (const std::string& id : {"R9", "R10", "R11", "R12"}) {
    const RewriteRule* rule = nullptr;
    for (const auto& r : catalog())
      if (r.id == id) rule = &r;
    REQUIRE(rule);
    for (const auto& inst : rule->instances(2)) {
      const int ld = std::max(diag::degree(inst.lhs), 0);
      if (inst.rhs.is_zero()) continue;
      int equal = 0;
      for (auto& [d, c] : inst.rhs.terms()) {
        CHECK(d.dot_degree() <= ld);
        if (d.dot_degree() == ld) ++equal;
      }
      CHECK(equal >= 1);
      if (id == "R9" || id == "R10") CHECK(equal == 1);
    }
  }
}

TEST_CASE("normalizer agrees with the catalog") {
  // LHS and RHS of every small instance have equal normal forms.
  for (const auto& rule : catalog()) {
    if (rule.ring_requirement == Ring::Q) continue;
    for (const auto& inst : rule.instances(2)) {
      CHECK(nf::normalize(inst.lhs, Ring::Q) ==
            nf::normalize(inst.rhs, Ring::Q));
    }
  }
}
