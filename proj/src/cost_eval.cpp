#include "andor/cost_eval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "andor/errors.hpp"

namespace andor {

namespace {

struct Validator {
  const TreeShape& shape;
  ProbeTrace trace;
  std::vector<char> probed;  // by leaf index
  std::optional<ValidationIssue> issue;

  bool walk(const DecisionTree& node, const KnowledgeState& state) {
    if (node.is_terminal()) {
      Resolution res = resolve(shape, state);
      int8_t root = res[static_cast<size_t>(shape.root())];
      int8_t declared = node.value() ? 1 : 0;
      if (root != declared) {
        std::string got = root == -1 ? "unresolved" : std::to_string(int(root));
        issue = ValidationIssue{
            "terminal declares " + std::to_string(int(declared)) + " but the root is " + got,
            trace};
        return false;
      }
      return true;
    }
    int leaf_id = shape.require_leaf(node.probe());
    int leaf_index = shape.node(leaf_id).leaf_index;
    if (probed[static_cast<size_t>(leaf_index)]) {
      issue = ValidationIssue{"leaf " + format_path(node.probe()) + " probed twice", trace};
      return false;
    }
    probed[static_cast<size_t>(leaf_index)] = 1;
    for (bool value : {false, true}) {
      trace.emplace_back(node.probe(), value);
      if (!walk(node.branch(value), state.with_leaf_index(leaf_index, value))) return false;
      trace.pop_back();
    }
    probed[static_cast<size_t>(leaf_index)] = 0;
    return true;
  }
};

}  // namespace

ValidationResult validate(const DecisionTree& alg, const TreeShape& shape) {
  Validator v{shape, {}, std::vector<char>(static_cast<size_t>(shape.leaf_count()), 0),
              std::nullopt};
  bool ok = v.walk(alg, KnowledgeState(shape));
  return ValidationResult{ok, std::move(v.issue)};
}

namespace {

using EdgeSet = std::set<std::pair<Path, Path>>;

void collect_edges(const DecisionTree& node, const Path* previous, EdgeSet& edges,
                   std::set<Path>& seen) {
  if (node.is_terminal()) return;
  seen.insert(node.probe());
  if (previous != nullptr) {
    edges.emplace(*previous, node.probe());
  }
  collect_edges(node.branch(false), &node.probe(), edges, seen);
  collect_edges(node.branch(true), &node.probe(), edges, seen);
}

// Any cycle reachable in the precedence digraph, as a node sequence.
std::vector<Path> find_cycle(const std::map<Path, std::set<Path>>& adjacency) {
  std::map<Path, int> color;  // 0 new, 1 active, 2 done
  std::vector<Path> stack;
  std::vector<Path> cycle;

  auto dfs = [&](auto&& self, const Path& node) -> bool {
    color[node] = 1;
    stack.push_back(node);
    auto it = adjacency.find(node);
    if (it != adjacency.end()) {
      for (const Path& next : it->second) {
        int c = color.count(next) ? color[next] : 0;
        if (c == 1) {
          auto start = std::find(stack.begin(), stack.end(), next);
          cycle.assign(start, stack.end());
          return true;
        }
        if (c == 0 && self(self, next)) return true;
      }
    }
    stack.pop_back();
    color[node] = 2;
    return false;
  };

  for (const auto& [node, _] : adjacency) {
    if ((color.count(node) ? color[node] : 0) == 0) {
      if (dfs(dfs, node)) return cycle;
    }
  }
  return {};
}

}  // namespace

DirectionalityResult is_directional(const DecisionTree& alg) {
  EdgeSet edges;
  std::set<Path> seen;
  collect_edges(alg, nullptr, edges, seen);

  std::map<Path, std::set<Path>> adjacency;
  std::map<Path, int> indegree;
  for (const Path& p : seen) indegree[p] = 0;
  for (const auto& [a, b] : edges) {
    if (adjacency[a].insert(b).second) ++indegree[b];
  }

  // Kahn's algorithm, always taking the smallest available path so the
  // witness order is deterministic.
  DirectionalityResult result;
  std::set<Path> ready;
  for (const auto& [p, d] : indegree) {
    if (d == 0) ready.insert(p);
  }
  while (!ready.empty()) {
    Path p = *ready.begin();
    ready.erase(ready.begin());
    result.order.push_back(p);
    for (const Path& next : adjacency[p]) {
      if (--indegree[next] == 0) ready.insert(next);
    }
  }
  if (result.order.size() == seen.size()) {
    result.directional = true;
    return result;
  }
  result.order.clear();
  result.cycle = find_cycle(adjacency);
  return result;
}

namespace {

struct DepthFirstChecker {
  const TreeShape& shape;
  KnowledgeState state;
  std::vector<char> probed_under;  // by node id, internal nodes only
  ProbeTrace trace;
  std::optional<DepthFirstResult> violation;

  bool walk(const DecisionTree& node) {
    if (node.is_terminal()) return true;
    int leaf_id = shape.require_leaf(node.probe());

    // Every probed-under but unresolved node must contain this probe.
    Resolution res = resolve(shape, state);
    for (int id = 0; id < shape.node_count(); ++id) {
      if (!probed_under[static_cast<size_t>(id)] || res[static_cast<size_t>(id)] != -1) continue;
      if (!shape.is_ancestor(id, leaf_id)) {
        DepthFirstResult r;
        r.depth_first = false;
        r.trace = trace;
        r.violating_probe = node.probe();
        r.open_node = shape.node(id).path;
        violation = std::move(r);
        return false;
      }
    }

    std::vector<int> marked;
    for (int id = shape.node(leaf_id).parent; id >= 0; id = shape.node(id).parent) {
      if (!probed_under[static_cast<size_t>(id)]) {
        probed_under[static_cast<size_t>(id)] = 1;
        marked.push_back(id);
      }
    }
    int leaf_index = shape.node(leaf_id).leaf_index;
    KnowledgeState saved = state;
    for (bool value : {false, true}) {
      state = saved.with_leaf_index(leaf_index, value);
      trace.emplace_back(node.probe(), value);
      bool ok = walk(node.branch(value));
      trace.pop_back();
      if (!ok) return false;
    }
    state = saved;
    for (int id : marked) probed_under[static_cast<size_t>(id)] = 0;
    return true;
  }
};

}  // namespace

DepthFirstResult is_depth_first(const DecisionTree& alg, const TreeShape& shape) {
  DepthFirstChecker checker{shape, KnowledgeState(shape),
                            std::vector<char>(static_cast<size_t>(shape.node_count()), 0),
                            {}, std::nullopt};
  if (checker.walk(alg)) {
    DepthFirstResult r;
    r.depth_first = true;
    return r;
  }
  return *checker.violation;
}

Rational expected_cost(const DecisionTree& alg, const TreeShape& shape,
                       const IndependentDistribution& dist) {
  std::unordered_map<const void*, Rational> memo;

  auto eval = [&](auto&& self, const DecisionTree& node) -> Rational {
    if (node.is_terminal()) return Rational(0);
    auto it = memo.find(node.key());
    if (it != memo.end()) return it->second;
    const Rational& p = dist.p_zero(shape.node(shape.require_leaf(node.probe())).leaf_index);
    Rational cost = 1 + p * self(self, node.branch(false)) +
                    (Rational(1) - p) * self(self, node.branch(true));
    memo.emplace(node.key(), cost);
    return cost;
  };

  return eval(eval, alg);
}

}  // namespace andor
