#include "webcat/rules.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace webcat::rules {

using comb::binomial;
using comb::factorial;
using diag::compose;
using diag::m_cross;
using diag::m_dot;
using diag::m_id;
using diag::m_merge;
using diag::m_split;
using diag::m_wdot;
using diag::Morphism;
using diag::tensor;

namespace {

Morphism zid(int a) {
  return a > 0 ? m_id(a) : m_id(comb::Composition());
}
Morphism zmerge(int a, int b) {
  if (a == 0) return zid(b);
  if (b == 0) return zid(a);
  return m_merge(a, b);
}
Morphism zsplit(int a, int b) {
  if (a == 0) return zid(b);
  if (b == 0) return zid(a);
  return m_split(a, b);
}
Morphism zcross(int a, int b) {
  if (a == 0) return zid(b);
  if (b == 0) return zid(a);
  return m_cross(a, b);
}
Morphism zwdot(int a, int r) {
  if (a == 0) return zid(0);
  return m_wdot(a, r);
}

Morphism chain(std::initializer_list<Morphism> top_to_bottom) {
  auto it = top_to_bottom.begin();
  Morphism m = *it;
  for (++it; it != top_to_bottom.end(); ++it) m = compose(m, *it);
  return m;
}

std::string lbl(const std::string& id, std::initializer_list<int> vals) {
  std::ostringstream os;
  os << id << "[";
  bool first = true;
  for (int v : vals) {
    if (!first) os << ",";
    first = false;
    os << v;
  }
  os << "]";
  return os.str();
}

// Thin split / merge combs on a strand of thickness a.
Morphism thin_split(int a) {
  Morphism m = m_id(a);
  for (int k = 1; k < a; ++k)
    m = compose(tensor(m_id(comb::Composition(std::vector<int>(
                    static_cast<size_t>(k - 1), 1))),
                       m_split(1, a - k)),
                m);
  return m;
}
Morphism thin_merge(int a) { return diag::reflect(thin_split(a)); }

std::vector<Instance> r1_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b)
      for (int c = 1; c <= bound; ++c) {
        out.push_back({lbl("R1m", {a, b, c}),
                       chain({m_merge(a + b, c), tensor(m_merge(a, b), m_id(c))}),
                       chain({m_merge(a, b + c), tensor(m_id(a), m_merge(b, c))})});
        out.push_back({lbl("R1s", {a, b, c}),
                       chain({tensor(m_split(a, b), m_id(c)), m_split(a + b, c)}),
                       chain({tensor(m_id(a), m_split(b, c)), m_split(a, b + c)})});
      }
  return out;
}

std::vector<Instance> r2_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b)
      for (int c = 1; c <= bound; ++c) {
        const int d = a + c - b;
        if (d < 1 || d > bound) continue;
        Morphism lhs = chain({m_split(b, d), m_merge(a, c)});
        Morphism rhs = Morphism::zero(lhs.source(), lhs.target());
        for (int s = 0; s <= std::min(a, b); ++s) {
          const int t = s + d - a;
          if (t < 0 || t > std::min(c, d)) continue;
          rhs = rhs +
                chain({tensor(zmerge(s, c - t), zmerge(a - s, t)),
                       tensor(zid(s), tensor(zcross(a - s, c - t), zid(t))),
                       tensor(zsplit(s, a - s), zsplit(c - t, t))});
        }
        out.push_back({lbl("R2", {a, b, c, d}), lhs, rhs});
      }
  return out;
}

std::vector<Instance> r3_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b)
      out.push_back({lbl("R3", {a, b}),
                     chain({m_merge(a, b), m_split(a, b)}),
                     m_id(a + b).scaled(Rat(binomial(a + b, a)))});
  return out;
}

Morphism r10_rhs_first(int a, int b, int r) {
  Morphism rhs = Morphism::zero(comb::Composition({a, b}),
                                comb::Composition({b, a}));
  for (int t = 0; t <= std::min({a, b, r}); ++t) {
    Morphism term = chain(
        {tensor(zmerge(t, b - t), zmerge(a - t, t)),
         tensor(zid(t), tensor(zcross(a - t, b - t), zid(t))),
         tensor(zid(t), tensor(zid(a - t), tensor(zwdot(b - t, r - t), zid(t)))),
         tensor(zsplit(t, a - t), zsplit(b - t, t))});
    rhs = rhs + term.scaled(Rat(factorial(t)));
  }
  return rhs;
}

Morphism r10_rhs_second(int a, int b, int r) {
  Morphism rhs = Morphism::zero(comb::Composition({b, a}),
                                comb::Composition({a, b}));
  for (int t = 0; t <= std::min({a, b, r}); ++t) {
    Morphism term = chain(
        {tensor(zmerge(t, a - t), zmerge(b - t, t)),
         tensor(zid(t), tensor(zid(a - t), tensor(zwdot(b - t, r - t), zid(t)))),
         tensor(zid(t), tensor(zcross(b - t, a - t), zid(t))),
         tensor(zsplit(t, b - t), zsplit(a - t, t))});
    rhs = rhs + term.scaled(Rat(factorial(t)));
  }
  return rhs;
}

std::vector<Instance> r4_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b) {
      out.push_back({lbl("R4a", {a, b}),
                     chain({tensor(m_dot(b), m_id(a)), m_cross(a, b)}),
                     r10_rhs_first(a, b, b)});
      out.push_back({lbl("R4b", {a, b}),
                     chain({m_cross(b, a), tensor(m_dot(b), m_id(a))}),
                     r10_rhs_second(a, b, b)});
    }
  return out;
}

std::vector<Instance> r5_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b) {
      out.push_back({lbl("R5s", {a, b}),
                     chain({m_split(a, b), m_dot(a + b)}),
                     chain({tensor(m_dot(a), m_dot(b)), m_split(a, b)})});
      out.push_back({lbl("R5m", {a, b}),
                     chain({m_dot(a + b), m_merge(a, b)}),
                     chain({m_merge(a, b), tensor(m_dot(a), m_dot(b))})});
    }
  return out;
}

Morphism thin_balloon(int a, const Morphism& thin_decoration) {
  // split into thin strands, decorate each, merge back
  Morphism mid = m_id(comb::Composition(std::vector<int>()));
  for (int k = 0; k < a; ++k) mid = tensor(mid, thin_decoration);
  return chain({thin_merge(a), mid, thin_split(a)});
}

std::vector<Instance> r6_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    out.push_back({lbl("R6", {a}), thin_balloon(a, m_dot(1)),
                   m_dot(a).scaled(Rat(factorial(a)))});
  return out;
}

std::vector<Instance> r7_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b) {
      Morphism rhs = Morphism::zero(comb::Composition({a, b}),
                                    comb::Composition({b, a}));
      for (int t = 0; t <= std::min(a, b); ++t) {
        Morphism term = chain({tensor(zmerge(t, b - t), zid(a)),
                               tensor(zid(t), zsplit(b - t, a)),
                               tensor(zid(t), zmerge(a - t, b)),
                               tensor(zsplit(t, a - t), zid(b))});
        rhs = rhs + term.scaled(t % 2 == 0 ? Rat(1) : Rat(-1));
      }
      out.push_back({lbl("R7", {a, b}), m_cross(a, b), rhs});
    }
  return out;
}

std::vector<Instance> r8_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b) {
      out.push_back({lbl("R8swm", {a, b}),
                     chain({m_merge(b, a), m_cross(a, b)}), m_merge(a, b)});
      out.push_back({lbl("R8sws", {a, b}),
                     chain({m_cross(b, a), m_split(b, a)}), m_split(a, b)});
      out.push_back({lbl("R8sym", {a, b}),
                     chain({m_cross(b, a), m_cross(a, b)}), m_id(comb::Composition({a, b}))});
    }
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b)
      for (int c = 1; c <= bound; ++c) {
        out.push_back(
            {lbl("R8slm1", {a, b, c}),
             chain({m_cross(b + c, a), tensor(m_merge(b, c), m_id(a))}),
             chain({tensor(m_id(a), m_merge(b, c)),
                    tensor(m_cross(b, a), m_id(c)),
                    tensor(m_id(b), m_cross(c, a))})});
        out.push_back(
            {lbl("R8slm2", {a, b, c}),
             chain({m_cross(a, b + c), tensor(m_id(a), m_merge(b, c))}),
             chain({tensor(m_merge(b, c), m_id(a)),
                    tensor(m_id(b), m_cross(a, c)),
                    tensor(m_cross(a, b), m_id(c))})});
        out.push_back(
            {lbl("R8sls1", {a, b, c}),
             chain({tensor(m_split(b, c), m_id(a)), m_cross(a, b + c)}),
             chain({tensor(m_id(b), m_cross(a, c)),
                    tensor(m_cross(a, b), m_id(c)),
                    tensor(m_id(a), m_split(b, c))})});
        out.push_back(
            {lbl("R8sls2", {a, b, c}),
             chain({tensor(m_id(a), m_split(b, c)), m_cross(b + c, a)}),
             chain({tensor(m_cross(b, a), m_id(c)),
                    tensor(m_id(b), m_cross(c, a)),
                    tensor(m_split(b, c), m_id(a))})});
        out.push_back(
            {lbl("R8braid", {a, b, c}),
             chain({tensor(m_id(c), m_cross(a, b)),
                    tensor(m_cross(a, c), m_id(b)),
                    tensor(m_id(a), m_cross(b, c))}),
             chain({tensor(m_cross(b, c), m_id(a)),
                    tensor(m_id(b), m_cross(a, c)),
                    tensor(m_cross(a, b), m_id(c))})});
      }
  return out;
}

std::vector<Instance> r9_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b)
      for (int r = 0; r <= a; ++r)
        out.push_back(
            {lbl("R9", {a, b, r}),
             chain({m_merge(a, b), tensor(m_wdot(a, r), m_id(b)),
                    m_split(a, b)}),
             m_wdot(a + b, r).scaled(Rat(binomial(a + b - r, b)))});
  return out;
}

std::vector<Instance> r10_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b)
      for (int r = 0; r <= b; ++r) {
        out.push_back({lbl("R10a", {a, b, r}),
                       chain({tensor(m_wdot(b, r), m_id(a)), m_cross(a, b)}),
                       r10_rhs_first(a, b, r)});
        out.push_back({lbl("R10b", {a, b, r}),
                       chain({m_cross(b, a), tensor(m_wdot(b, r), m_id(a))}),
                       r10_rhs_second(a, b, r)});
      }
  return out;
}

std::vector<Instance> r11_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b)
      for (int r = 0; r <= a + b; ++r) {
        Morphism lhs = chain({m_split(a, b), m_wdot(a + b, r)});
        Morphism rhs = Morphism::zero(lhs.source(), lhs.target());
        for (int c = 0; c <= std::min(a, r); ++c)
          for (int d = 0; c + d <= r && d <= b; ++d) {
            const int e = r - c - d;
            Int coeff = factorial(e) * binomial(a - c, e) * binomial(b - d, e);
            if (coeff == 0) continue;
            rhs = rhs + chain({tensor(m_wdot(a, c), m_wdot(b, d)),
                               m_split(a, b)})
                            .scaled(Rat(coeff));
          }
        out.push_back({lbl("R11", {a, b, r}), lhs, rhs});
      }
  return out;
}

std::vector<Instance> r12_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int b = 1; b <= bound; ++b)
      for (int r = 0; r <= a + b; ++r) {
        Morphism lhs = chain({m_wdot(a + b, r), m_merge(a, b)});
        Morphism rhs = Morphism::zero(lhs.source(), lhs.target());
        for (int c = 0; c <= std::min(a, r); ++c)
          for (int d = 0; c + d <= r && d <= b; ++d) {
            const int e = r - c - d;
            Int coeff = factorial(e) * binomial(a - c, e) * binomial(b - d, e);
            if (coeff == 0) continue;
            rhs = rhs + chain({m_merge(a, b),
                               tensor(m_wdot(a, c), m_wdot(b, d))})
                            .scaled(Rat(coeff));
          }
        out.push_back({lbl("R12", {a, b, r}), lhs, rhs});
      }
  return out;
}

std::vector<Instance> r13_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    for (int r = 1; r <= a; ++r)
      for (int t = r; t <= a; ++t)
        out.push_back({lbl("R13", {a, r, t}),
                       chain({m_wdot(a, r), m_wdot(a, t)}),
                       chain({m_wdot(a, t), m_wdot(a, r)})});
  return out;
}

std::vector<Instance> r14_instances(int bound) {
  std::vector<Instance> out;
  for (int a = 1; a <= bound; ++a)
    out.push_back({lbl("R14", {a}), m_dot(a),
                   thin_balloon(a, m_dot(1)).scaled(Rat(1) / Rat(factorial(a)))});
  return out;
}

}  // namespace

const std::vector<RewriteRule>& catalog() {
  static const std::vector<RewriteRule> rules = {
      {"R1", "merge and split associativity", Ring::Z, r1_instances},
      {"R2", "merge-then-split exchange", Ring::Z, r2_instances},
      {"R3", "split-then-merge collapse", Ring::Z, r3_instances},
      {"R4", "full decoration through a crossing", Ring::Z, r4_instances},
      {"R5", "full decoration through split and merge", Ring::Z, r5_instances},
      {"R6", "thin balloon collapse", Ring::Z, r6_instances},
      {"R7", "crossing as a split-merge ladder", Ring::Z, r7_instances},
      {"R8", "swallow, slide, symmetry, braid", Ring::Z, r8_instances},
      {"R9", "decorated split-then-merge", Ring::Z, r9_instances},
      {"R10", "decoration through a crossing", Ring::Z, r10_instances},
      {"R11", "decoration through a split", Ring::Z, r11_instances},
      {"R12", "decoration through a merge", Ring::Z, r12_instances},
      {"R13", "decorations commute on a strand", Ring::Z, r13_instances},
      {"R14", "full decoration as averaged balloon", Ring::Q, r14_instances},
  };
  return rules;
}

CheckReport check_rule(const RewriteRule& rule, int label_bound,
                       const rep::RepParams& params, Ring ring, uint64_t seed,
                       long probe_threshold) {
  if (rule.ring_requirement == Ring::Q && ring == Ring::Z)
    throw ring_error(rule.id + " requires the rational coefficient ring");
  CheckReport report;
  report.rule_id = rule.id;
  std::mt19937_64 rng(seed);
  for (const Instance& inst : rule.instances(label_bound)) {
    ++report.checked;
    auto check_pair = [&](const Morphism& lhs, const Morphism& rhs,
                          const std::string& label) {
      rep::WedgeSpace src(lhs.source(), params.N);
      rep::WedgeSpace dst(lhs.target(), params.N);
      std::vector<long> cols;
      if (src.dim() * std::max<long>(dst.dim(), 1) > probe_threshold &&
          src.dim() > 24) {
        std::vector<long> all(static_cast<size_t>(src.dim()));
        for (long i = 0; i < src.dim(); ++i) all[static_cast<size_t>(i)] = i;
        std::shuffle(all.begin(), all.end(), rng);
        cols.assign(all.begin(), all.begin() + 24);
      } else {
        for (long i = 0; i < src.dim(); ++i) cols.push_back(i);
      }
      auto ml = rep::evaluate_on_columns(lhs, params, cols);
      auto mr = rep::evaluate_on_columns(rhs, params, cols);
      if (!(ml == mr)) report.failures.push_back(label);
    };
    check_pair(inst.lhs, inst.rhs, inst.label);
    check_pair(diag::reflect(inst.lhs), diag::reflect(inst.rhs),
               inst.label + "/reflected");
  }
  return report;
}

}  // namespace webcat::rules
