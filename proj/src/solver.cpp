#include "andor/solver.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "andor/errors.hpp"

namespace andor {

namespace {

void require_admissible_prob(const Rational& p) {
  if (p <= 0 || p >= 1) {
    throw DomainError("probability " + to_string(p) + " is not strictly between 0 and 1");
  }
}

// Summary over an explicit subset of a gate's leaves, keeping original
// positions in leaf_order.
GateSummary summarize(const std::vector<int>& positions, const std::vector<Rational>& probs) {
  if (positions.empty()) {
    throw DomainError("gate summary over an empty gate");
  }
  for (int j : positions) require_admissible_prob(probs[static_cast<size_t>(j)]);

  GateSummary summary;
  summary.leaf_order = positions;
  std::sort(summary.leaf_order.begin(), summary.leaf_order.end(), [&](int a, int b) {
    const Rational& pa = probs[static_cast<size_t>(a)];
    const Rational& pb = probs[static_cast<size_t>(b)];
    if (pa != pb) return pa < pb;
    return a < b;
  });

  summary.zero_prob = 1;
  summary.cost = 1;
  Rational prefix = 1;
  for (size_t k = 0; k < summary.leaf_order.size(); ++k) {
    const Rational& p = probs[static_cast<size_t>(summary.leaf_order[k])];
    summary.zero_prob *= p;
    if (k + 1 < summary.leaf_order.size()) {
      // Probing stops early only on a 1; after the last leaf the gate is
      // determined either way, so the final product term does not appear.
      prefix *= p;
      summary.cost += prefix;
    }
  }
  summary.ratio = summary.cost / summary.zero_prob;
  return summary;
}

// Ascending cost/probability ratio via cross-multiplication, ties by gate
// index.
bool higher_priority(const GateSummary& a, const GateSummary& b) {
  Rational lhs = a.cost * b.zero_prob;
  Rational rhs = b.cost * a.zero_prob;
  if (lhs != rhs) return lhs < rhs;
  return a.gate < b.gate;
}

}  // namespace

GateSummary gate_summary(const std::vector<Rational>& probs) {
  std::vector<int> positions(probs.size());
  std::iota(positions.begin(), positions.end(), 0);
  return summarize(positions, probs);
}

std::vector<int> gate_order(const std::vector<GateSummary>& summaries) {
  std::vector<int> indices(summaries.size());
  std::iota(indices.begin(), indices.end(), 0);
  std::sort(indices.begin(), indices.end(),
            [&](int a, int b) { return higher_priority(summaries[a], summaries[b]); });
  std::vector<int> order;
  order.reserve(indices.size());
  for (int i : indices) order.push_back(summaries[static_cast<size_t>(i)].gate);
  return order;
}

const GateSummary& plan_summary(const SolvePlan& plan, int gate) {
  for (const GateSummary& s : plan.gates) {
    if (s.gate == gate) return s;
  }
  throw StructureError("gate " + std::to_string(gate) + " is not part of the plan");
}

namespace {

void require_solver_class(const TreeShape& shape) {
  if (!shape.is_and_rooted_height2()) {
    throw DomainError(
        "the priority solver handles AND-rooted trees of height at most 2; "
        "run the oracle for other shapes");
  }
}

// Plan over the leaves that survive `removed`. With an empty removal set
// this is the plan for the whole instance.
SolvePlan plan_over(const TreeShape& shape, const IndependentDistribution& dist,
                    const std::vector<Path>& removed) {
  require_solver_class(shape);

  std::vector<char> removed_mark(static_cast<size_t>(shape.node_count()), 0);
  for (const Path& path : removed) {
    int id = shape.find(path);
    if (id < 0) throw StructureError("unknown node path '" + format_path(path) + "'");
    if (id == shape.root()) throw DomainError("cannot remove the root");
    removed_mark[static_cast<size_t>(id)] = 1;
  }

  SolvePlan plan;
  const TreeShape::Node& root = shape.node(shape.root());
  bool any_leaf = false;
  for (size_t i = 0; i < root.children.size(); ++i) {
    int gate_id = root.children[i];
    if (removed_mark[static_cast<size_t>(gate_id)]) continue;
    const TreeShape::Node& gate = shape.node(gate_id);
    std::vector<int> positions;
    std::vector<Rational> probs(gate.children.size());
    for (size_t j = 0; j < gate.children.size(); ++j) {
      int leaf_id = gate.children[j];
      probs[j] = dist.p_zero(shape.node(leaf_id).leaf_index);
      if (!removed_mark[static_cast<size_t>(leaf_id)]) {
        positions.push_back(static_cast<int>(j));
      }
    }
    if (positions.empty()) continue;  // fully pruned gate
    any_leaf = true;
    GateSummary summary = summarize(positions, probs);
    summary.gate = static_cast<int>(i);
    plan.gates.push_back(std::move(summary));
  }
  if (!any_leaf) {
    throw DomainError("no leaves remain after removal");
  }
  plan.order = gate_order(plan.gates);
  return plan;
}

DecisionTree strategy_from_plan(const TreeShape& shape, const SolvePlan& plan) {
  const TreeShape::Node& root = shape.node(shape.root());

  // Leaf node ids per planned gate, in probe order.
  std::vector<std::vector<int>> segments;
  for (int gate : plan.order) {
    const GateSummary& summary = plan_summary(plan, gate);
    const TreeShape::Node& gate_node = shape.node(root.children[static_cast<size_t>(gate)]);
    std::vector<int> leaves;
    leaves.reserve(summary.leaf_order.size());
    for (int j : summary.leaf_order) {
      leaves.push_back(gate_node.children.at(static_cast<size_t>(j)));
    }
    segments.push_back(std::move(leaves));
  }
  return segment_chain_strategy(shape, segments);
}

Rational cost_from_plan(const SolvePlan& plan) {
  Rational total = 0;
  Rational reach = 1;  // probability every earlier gate evaluated to 1
  for (int gate : plan.order) {
    const GateSummary& summary = plan_summary(plan, gate);
    total += reach * summary.cost;
    reach *= Rational(1) - summary.zero_prob;
  }
  return total;
}

}  // namespace

SolvePlan solve_plan(const TreeShape& shape, const IndependentDistribution& dist) {
  return plan_over(shape, dist, {});
}

DecisionTree segment_chain_strategy(const TreeShape& shape,
                                    const std::vector<std::vector<int>>& segments) {
  for (const auto& segment : segments) {
    if (segment.empty()) throw DomainError("empty segment in chain strategy");
  }
  // Built back to front; each query's 1-branch shares the next segment's
  // subtree.
  DecisionTree next = DecisionTree::terminal(true);
  for (size_t seg = segments.size(); seg-- > 0;) {
    const std::vector<int>& leaves = segments[seg];
    DecisionTree cur = DecisionTree::terminal(false);
    for (size_t idx = leaves.size(); idx-- > 0;) {
      cur = DecisionTree::query(shape.node(leaves[idx]).path, std::move(cur), next);
    }
    next = std::move(cur);
  }
  return next;
}

DecisionTree sequential_strategy(const TreeShape& shape, const std::vector<int>& gates,
                                 const std::vector<std::vector<int>>& leaf_orders) {
  require_solver_class(shape);
  SolvePlan plan;
  const TreeShape::Node& root = shape.node(shape.root());
  for (int gate : gates) {
    if (gate < 0 || static_cast<size_t>(gate) >= root.children.size()) {
      throw StructureError("gate index " + std::to_string(gate) + " out of range");
    }
    GateSummary summary;
    summary.gate = gate;
    summary.leaf_order = leaf_orders[static_cast<size_t>(gate)];
    plan.gates.push_back(std::move(summary));
    plan.order.push_back(gate);
  }
  return strategy_from_plan(shape, plan);
}

DecisionTree solve_strategy(const TreeShape& shape, const IndependentDistribution& dist) {
  return strategy_from_plan(shape, solve_plan(shape, dist));
}

Rational solve_strategy_cost(const TreeShape& shape, const IndependentDistribution& dist) {
  return cost_from_plan(solve_plan(shape, dist));
}

SolvePlan restricted_solve_plan(const TreeShape& shape, const IndependentDistribution& dist,
                                const std::vector<Path>& removed) {
  return plan_over(shape, dist, removed);
}

DecisionTree restricted_solve_strategy(const TreeShape& shape, const IndependentDistribution& dist,
                                       const std::vector<Path>& removed) {
  return strategy_from_plan(shape, plan_over(shape, dist, removed));
}

}  // namespace andor
