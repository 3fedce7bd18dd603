#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "andor/knowledge.hpp"
#include "andor/solver.hpp"

namespace andor::testing {

int eval_node(const TreeShape& shape, int node_id, const std::vector<int8_t>& leaf_values) {
  const TreeShape::Node& node = shape.node(node_id);
  if (node.leaf) return leaf_values[static_cast<size_t>(node.leaf_index)];
  bool is_and = node.gate == Gate::And;
  for (int child : node.children) {
    int v = eval_node(shape, child, leaf_values);
    if (is_and && v == 0) return 0;
    if (!is_and && v == 1) return 1;
  }
  return is_and ? 1 : 0;
}

std::pair<int, int> walk(const DecisionTree& alg, const TreeShape& shape,
                         const std::vector<int8_t>& leaf_values) {
  DecisionTree cur = alg;
  int probes = 0;
  while (!cur.is_terminal()) {
    int leaf = shape.require_leaf(cur.probe());
    ++probes;
    cur = cur.branch(leaf_values[static_cast<size_t>(shape.node(leaf).leaf_index)] == 1);
  }
  return {probes, cur.value() ? 1 : 0};
}

Rational brute_force_cost(const DecisionTree& alg, const TreeShape& shape,
                          const IndependentDistribution& dist) {
  int n = shape.leaf_count();
  Rational total = 0;
  for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
    std::vector<int8_t> values(static_cast<size_t>(n));
    Rational prob = 1;
    for (int i = 0; i < n; ++i) {
      values[static_cast<size_t>(i)] = (bits >> i) & 1;
      prob *= values[static_cast<size_t>(i)] ? Rational(1) - dist.p_zero(i) : dist.p_zero(i);
    }
    total += prob * walk(alg, shape, values).first;
  }
  return total;
}

DecisionTree random_valid_decision_tree(Rng& rng, const TreeShape& shape, int wasteful_percent) {
  auto build = [&](auto&& self, const KnowledgeState& state) -> DecisionTree {
    Resolution res = resolve(shape, state);
    int8_t root = res[static_cast<size_t>(shape.root())];
    if (root != -1) return DecisionTree::terminal(root == 1);

    std::vector<int> pool;
    if (static_cast<int>(rng.below(100)) < wasteful_percent) {
      for (int leaf : shape.leaf_ids()) {
        if (!state.assigned(shape.node(leaf).leaf_index)) pool.push_back(leaf);
      }
    } else {
      pool = relevant_leaves(shape, state);
    }
    int leaf = pool[rng.below(pool.size())];
    int leaf_index = shape.node(leaf).leaf_index;
    return DecisionTree::query(shape.node(leaf).path,
                               self(self, state.with_leaf_index(leaf_index, false)),
                               self(self, state.with_leaf_index(leaf_index, true)));
  };
  return build(build, KnowledgeState(shape));
}

namespace {

void leaf_order_combos(const std::vector<int>& arity, size_t gate,
                       std::vector<std::vector<int>>& current,
                       const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  if (gate == arity.size()) {
    fn(current);
    return;
  }
  std::vector<int> order(static_cast<size_t>(arity[gate]));
  std::iota(order.begin(), order.end(), 0);
  do {
    current.push_back(order);
    leaf_order_combos(arity, gate + 1, current, fn);
    current.pop_back();
  } while (std::next_permutation(order.begin(), order.end()));
}

}  // namespace

void for_each_sequential_strategy(const TreeShape& shape,
                                  const std::function<void(const DecisionTree&)>& fn) {
  const TreeShape::Node& root = shape.node(shape.root());
  std::vector<int> arity;
  for (int gate : root.children) {
    arity.push_back(static_cast<int>(shape.node(gate).children.size()));
  }

  std::vector<int> gates(root.children.size());
  std::iota(gates.begin(), gates.end(), 0);
  do {
    std::vector<std::vector<int>> orders;
    leaf_order_combos(arity, 0, orders, [&](const std::vector<std::vector<int>>& leaf_orders) {
      fn(sequential_strategy(shape, gates, leaf_orders));
    });
  } while (std::next_permutation(gates.begin(), gates.end()));
}

bool paths_follow_order(const DecisionTree& alg, const std::vector<Path>& order) {
  std::map<Path, size_t> rank;
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  auto check = [&](auto&& self, const DecisionTree& node, size_t min_rank) -> bool {
    if (node.is_terminal()) return true;
    auto it = rank.find(node.probe());
    if (it == rank.end()) return false;
    if (it->second < min_rank) return false;
    return self(self, node.branch(false), it->second + 1) &&
           self(self, node.branch(true), it->second + 1);
  };
  return check(check, alg, 0);
}

}  // namespace andor::testing
