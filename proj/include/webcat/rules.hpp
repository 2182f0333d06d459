#pragma once

#include <functional>
#include <string>
#include <vector>

#include "webcat/diagram.hpp"
#include "webcat/rep_oracle.hpp"

namespace webcat::rules {

using diag::Morphism;

/// One relation instance: equal morphisms built two ways.
struct Instance {
  std::string label;  // e.g. "R3[a=2,b=1]"
  Morphism lhs, rhs;
};

/// A relation of the category, carried as data: an identifier, the ring it
/// needs, and a generator of all instances with labels up to a bound.
struct RewriteRule {
  std::string id;        // stable identifier, e.g. "R3"
  std::string name;      // descriptive, e.g. "split-then-merge collapse"
  Ring ring_requirement = Ring::Z;
  std::function<std::vector<Instance>(int)> instances;  // label bound
};

/// The full catalog R1..R14 in order.
const std::vector<RewriteRule>& catalog();

struct CheckReport {
  std::string rule_id;
  int checked = 0;
  std::vector<std::string> failures;  // instance labels
  bool ok() const { return failures.empty(); }
};

/// Evaluates lhs - rhs of every instance under the matrix representation at
/// the given parameters and reports exact mismatches. Probe columns are used
/// above the stated dimension threshold. Also checks each instance under
/// reflection.
CheckReport check_rule(const RewriteRule& rule, int label_bound,
                       const rep::RepParams& params, Ring ring = Ring::Q,
                       uint64_t seed = 7, long probe_threshold = 5000);

}  // namespace webcat::rules
