#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "andor/decision_tree.hpp"
#include "andor/knowledge.hpp"
#include "andor/tree.hpp"

namespace andor {

// A probe trace: the sequence of (leaf, observed value) choices leading to
// the point where a check failed.
using ProbeTrace = std::vector<std::pair<Path, bool>>;

struct ValidationIssue {
  std::string message;
  ProbeTrace trace;
};

struct ValidationResult {
  bool ok = false;
  std::optional<ValidationIssue> issue;
};

// Checks that no leaf repeats along any root-to-terminal path and that the
// knowledge accumulated along every path resolves the tree root to the
// declared terminal value. Probing leaves that are irrelevant under the
// current knowledge is wasteful but not invalid.
ValidationResult validate(const DecisionTree& alg, const TreeShape& shape);

struct DirectionalityResult {
  bool directional = false;
  std::vector<Path> order;  // a witness linear order when directional
  std::vector<Path> cycle;  // a precedence cycle when not
};

// An algorithm is directional when one fixed linear order of the leaves is
// consistent with the probe sequence of every root-to-terminal path.
DirectionalityResult is_directional(const DecisionTree& alg);

struct DepthFirstResult {
  bool depth_first = false;
  ProbeTrace trace;      // path prefix leading to the violation
  Path violating_probe;
  Path open_node;        // the probed-under, unresolved node left behind
};

// An algorithm is depth-first when, once it probes a leaf under an internal
// node x, it keeps probing under x until x's value is known.
DepthFirstResult is_depth_first(const DecisionTree& alg, const TreeShape& shape);

// Exact expected number of probes:
//   cost(Terminal) = 0
//   cost(Query(l, t0, t1)) = 1 + p(l) cost(t0) + (1 - p(l)) cost(t1).
// The algorithm must be valid for the shape; validity is not re-checked.
Rational expected_cost(const DecisionTree& alg, const TreeShape& shape,
                       const IndependentDistribution& dist);

}  // namespace andor
