#pragma once

#include <vector>

#include "andor/decision_tree.hpp"
#include "andor/tree.hpp"

namespace andor {

struct OracleLimits {
  int max_leaves = 12;
};

struct OracleResult {
  Rational cost;
  DecisionTree strategy;
};

// Exact minimum expected cost over all deterministic algorithms, by
// memoized recursion over canonical knowledge states, together with one
// optimal strategy (ties broken toward the smallest leaf path, so results
// are reproducible). Works on trees of any height within the leaf bound.
OracleResult optimal_cost(const TreeShape& shape, const IndependentDistribution& dist,
                          const OracleLimits& limits = {});

// The same minimum restricted to depth-first algorithms: a probe is only
// allowed under every internal node that has been probed into but not yet
// resolved. The returned strategy passes is_depth_first.
OracleResult optimal_depth_first_cost(const TreeShape& shape, const IndependentDistribution& dist,
                                      const OracleLimits& limits = {});

// All leaves that begin at least one optimal algorithm, as node ids in
// document order.
std::vector<int> all_optimal_first_probes(const TreeShape& shape,
                                          const IndependentDistribution& dist,
                                          const OracleLimits& limits = {});

// Minimum expected cost over depth-first algorithms whose first probe is
// the given leaf.
Rational depth_first_cost_with_first_probe(const TreeShape& shape,
                                           const IndependentDistribution& dist, int leaf_node_id,
                                           const OracleLimits& limits = {});

}  // namespace andor
