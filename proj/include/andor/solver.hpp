#pragma once

#include <vector>

#include "andor/decision_tree.hpp"
#include "andor/tree.hpp"

namespace andor {

// Summary of one OR gate under an admissible distribution: the cheapest
// probe order for its leaves, the probability the gate evaluates to 0, the
// minimum expected cost of determining its value, and the cost/probability
// ratio that drives the gate ordering.
struct GateSummary {
  int gate = -1;                // root-child position, -1 for a free-standing gate
  std::vector<int> leaf_order;  // leaf positions within the gate, cheapest first
  Rational zero_prob;           // product of the leaf zero-probabilities
  Rational cost;                // 1 + sum over the sorted prefix products
  Rational ratio;               // cost / zero_prob
};

// Summarizes a single gate. Leaves are ordered by ascending zero-probability
// with position as the tie-break. Throws DomainError on an empty gate or a
// probability not strictly inside (0,1).
GateSummary gate_summary(const std::vector<Rational>& probs);

// Priority order over gates: ascending cost/zero_prob ratio, ties by
// ascending gate index. Ratios are compared by cross-multiplication.
std::vector<int> gate_order(const std::vector<GateSummary>& summaries);

// The full plan for an AND-rooted height-<=2 instance: one summary per
// surviving gate plus the gate priority order.
struct SolvePlan {
  std::vector<GateSummary> gates;  // in root-child position order
  std::vector<int> order;          // gate positions, highest priority first
};

SolvePlan solve_plan(const TreeShape& shape, const IndependentDistribution& dist);

// The plan entry for a root-child position. Throws StructureError when the
// gate is not part of the plan.
const GateSummary& plan_summary(const SolvePlan& plan, int gate);

// The depth-first directional strategy induced by explicit orders: probe
// the gates in `gates` order, within each gate probe leaves in its
// `leaf_orders` entry, skip whatever the accumulated knowledge already
// settles, stop as soon as the root is determined.
DecisionTree sequential_strategy(const TreeShape& shape, const std::vector<int>& gates,
                                 const std::vector<std::vector<int>>& leaf_orders);

// The chain over explicit leaf segments (node ids in probe order), each
// segment standing for one OR gate under the AND root: a 1 settles the
// segment and moves to the next, exhausting a segment on 0s terminates
// with 0, surviving every segment terminates with 1. Segments may cover a
// gate only partially; the result is then valid relative to knowledge that
// already rules the missing leaves out.
DecisionTree segment_chain_strategy(const TreeShape& shape,
                                    const std::vector<std::vector<int>>& segments);

// The optimal depth-first directional strategy: gates by ascending
// cost/probability ratio, leaves by ascending zero-probability, index
// tie-breaks. Requires an AND-rooted shape of height at most 2 and an
// admissible distribution.
DecisionTree solve_strategy(const TreeShape& shape, const IndependentDistribution& dist);

// Closed form for solve_strategy's expected cost:
//   sum_k c(o_k) * prod_{j<k} (1 - p(o_j))
// over the gate order o. Equals expected_cost(solve_strategy(...)) exactly.
Rational solve_strategy_cost(const TreeShape& shape, const IndependentDistribution& dist);

// The same construction on the instance with the given nodes (and their
// subtrees) removed. Surviving nodes keep their original indices. Throws
// DomainError when no leaf survives or the root itself is removed.
DecisionTree restricted_solve_strategy(const TreeShape& shape, const IndependentDistribution& dist,
                                       const std::vector<Path>& removed);

SolvePlan restricted_solve_plan(const TreeShape& shape, const IndependentDistribution& dist,
                                const std::vector<Path>& removed);

}  // namespace andor
