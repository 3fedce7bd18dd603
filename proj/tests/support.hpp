#pragma once

// Test-only oracles and generators. Everything here recomputes results from
// first principles (assignment enumeration, permutation search) so the
// library's own evaluation paths are checked against independent routes.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "andor/cost_eval.hpp"
#include "andor/decision_tree.hpp"
#include "andor/experiments.hpp"
#include "andor/tree.hpp"

namespace andor::testing {

// Direct recursive boolean evaluation of a node under a full assignment
// (indexed by leaf index).
int eval_node(const TreeShape& shape, int node_id, const std::vector<int8_t>& leaf_values);

// Runs the decision tree on a full assignment; returns {probe count,
// declared terminal value}.
std::pair<int, int> walk(const DecisionTree& alg, const TreeShape& shape,
                         const std::vector<int8_t>& leaf_values);

// Sum over all 2^n assignments of assignment probability times probes
// walked. Exact, no memoization, no shared code with expected_cost.
Rational brute_force_cost(const DecisionTree& alg, const TreeShape& shape,
                          const IndependentDistribution& dist);

// A random valid decision tree: probes until the root resolves, then
// terminates with the resolved value. With probability wasteful_percent/100
// a probe is drawn from all unassigned leaves instead of only the relevant
// ones, so irrelevant queries appear too.
DecisionTree random_valid_decision_tree(Rng& rng, const TreeShape& shape, int wasteful_percent);

// Calls fn on the sequential strategy of every gate-order x per-gate
// leaf-order combination of an AND-rooted height-2 shape.
void for_each_sequential_strategy(const TreeShape& shape,
                                  const std::function<void(const DecisionTree&)>& fn);

// True when every root-to-terminal probe sequence is a subsequence of
// `order`.
bool paths_follow_order(const DecisionTree& alg, const std::vector<Path>& order);

}  // namespace andor::testing
