#include "andor/oracle.hpp"

#include <bit>
#include <cassert>
#include <unordered_map>
#include <utility>

#include "andor/errors.hpp"
#include "andor/knowledge.hpp"

namespace andor {

namespace {

// Search states are canonical: a state is identified by the set of leaves
// that are still relevant (unassigned, no resolved ancestor). Everything
// the continuation can observe — which probes remain useful, how the root
// eventually resolves, which depth-first moves are legal — is a function
// of that set, so a 64-bit leaf mask is a sound memoization key.
//
//   - a leaf outside the mask is either already probed or sits under a
//     settled subtree; for evaluation it behaves as its parent's identity
//     element (0 under an OR, 1 under an AND), because any other value
//     would have resolved an ancestor and emptied more of the mask;
//   - an internal node is "open" (probed into but unresolved) exactly when
//     the mask covers some but not all of the leaves below it.
class Engine {
 public:
  Engine(const TreeShape& shape, const IndependentDistribution& dist, const OracleLimits& limits)
      : shape_(shape), dist_(dist) {
    if (!dist.admissible()) {
      throw DomainError("the oracle requires an admissible distribution");
    }
    if (shape.leaf_count() > limits.max_leaves) {
      throw DomainError("instance has " + std::to_string(shape.leaf_count()) +
                        " leaves, over the oracle bound of " + std::to_string(limits.max_leaves));
    }
    if (shape.leaf_count() > 64) {
      throw DomainError("the oracle supports at most 64 leaves");
    }
    below_.resize(static_cast<size_t>(shape.node_count()), 0);
    for (int id = shape.node_count() - 1; id >= 0; --id) {
      const TreeShape::Node& node = shape.node(id);
      if (node.leaf) {
        below_[static_cast<size_t>(id)] = uint64_t{1} << node.leaf_index;
      } else {
        for (int child : node.children) {
          below_[static_cast<size_t>(id)] |= below_[static_cast<size_t>(child)];
        }
      }
    }
    full_mask_ = below_[static_cast<size_t>(shape.root())];
  }

  uint64_t full_mask() const { return full_mask_; }

  struct Step {
    uint64_t mask = 0;
    int8_t root_value = -1;  // set when mask becomes empty
  };

  // The canonical state after probing leaf `leaf_index` (present in `mask`)
  // and observing `value`. Walks the resolution cascade up the ancestor
  // chain; every other part of the tree is untouched by a single probe.
  Step apply(uint64_t mask, int leaf_index, bool value) const {
    int cur = shape_.leaf_node(leaf_index);
    int8_t val = value ? 1 : 0;
    while (true) {
      int parent = shape_.node(cur).parent;
      if (parent < 0) {
        return Step{0, val};  // the root itself resolved
      }
      const int8_t wins = shape_.node(parent).gate == Gate::And ? 0 : 1;
      if (val == wins) {
        cur = parent;  // annihilates the parent; keep cascading
        continue;
      }
      uint64_t rest = mask & ~below_[static_cast<size_t>(cur)];
      if (rest & below_[static_cast<size_t>(parent)]) {
        return Step{rest, -1};  // parent still has live children
      }
      // Every child of the parent now carries its identity value, so the
      // parent resolves to it — which in turn annihilates the grandparent.
      val = shape_.node(parent).gate == Gate::Or ? 0 : 1;
      cur = parent;
    }
  }

  // Leaves a depth-first algorithm may probe in this state: members of the
  // mask that lie below every open node.
  uint64_t depth_first_candidates(uint64_t mask) const {
    uint64_t allowed = mask;
    for (int id = 0; id < shape_.node_count(); ++id) {
      if (shape_.node(id).leaf) continue;
      uint64_t live = mask & below_[static_cast<size_t>(id)];
      if (live != 0 && live != below_[static_cast<size_t>(id)]) {
        allowed &= below_[static_cast<size_t>(id)];
      }
    }
    return allowed;
  }

  struct Entry {
    Rational cost;
    int best_leaf = -1;  // leaf index; -1 at the empty mask
  };

  const Entry& solve(uint64_t mask, bool depth_first) {
    auto& memo = depth_first ? df_memo_ : memo_;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;

    Entry entry;
    if (mask == 0) {
      entry.cost = 0;
    } else {
      uint64_t candidates = depth_first ? depth_first_candidates(mask) : mask;
      assert(candidates != 0);
      for (uint64_t rem = candidates; rem != 0; rem &= rem - 1) {
        int leaf = std::countr_zero(rem);
        const Rational& p = dist_.p_zero(leaf);
        Step s0 = apply(mask, leaf, false);
        Step s1 = apply(mask, leaf, true);
        Rational cost =
            1 + p * solve(s0.mask, depth_first).cost + (1 - p) * solve(s1.mask, depth_first).cost;
        if (entry.best_leaf < 0 || cost < entry.cost) {
          entry.cost = std::move(cost);
          entry.best_leaf = leaf;
        }
      }
    }
    return memo.emplace(mask, std::move(entry)).first->second;
  }

  DecisionTree extract(uint64_t mask, bool depth_first) {
    auto& cache = depth_first ? df_trees_ : trees_;
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;

    const Entry& entry = solve(mask, depth_first);
    int leaf = entry.best_leaf;
    auto branch = [&](bool value) {
      Step s = apply(mask, leaf, value);
      return s.mask == 0 ? DecisionTree::terminal(s.root_value == 1)
                         : extract(s.mask, depth_first);
    };
    DecisionTree tree = DecisionTree::query(shape_.node(shape_.leaf_node(leaf)).path,
                                            branch(false), branch(true));
    cache.emplace(mask, tree);
    return tree;
  }

  std::vector<int> first_probe_argmins() {
    const Entry& best = solve(full_mask_, false);
    std::vector<int> out;
    for (int leaf = 0; leaf < shape_.leaf_count(); ++leaf) {
      const Rational& p = dist_.p_zero(leaf);
      Step s0 = apply(full_mask_, leaf, false);
      Step s1 = apply(full_mask_, leaf, true);
      Rational cost = 1 + p * solve(s0.mask, false).cost + (1 - p) * solve(s1.mask, false).cost;
      if (cost == best.cost) out.push_back(shape_.leaf_node(leaf));
    }
    return out;
  }

  Rational forced_first_depth_first(int leaf_index) {
    const Rational& p = dist_.p_zero(leaf_index);
    Step s0 = apply(full_mask_, leaf_index, false);
    Step s1 = apply(full_mask_, leaf_index, true);
    return 1 + p * solve(s0.mask, true).cost + (1 - p) * solve(s1.mask, true).cost;
  }

 private:
  const TreeShape& shape_;
  const IndependentDistribution& dist_;
  std::vector<uint64_t> below_;
  uint64_t full_mask_ = 0;
  std::unordered_map<uint64_t, Entry> memo_;
  std::unordered_map<uint64_t, Entry> df_memo_;
  std::unordered_map<uint64_t, DecisionTree> trees_;
  std::unordered_map<uint64_t, DecisionTree> df_trees_;
};

}  // namespace

OracleResult optimal_cost(const TreeShape& shape, const IndependentDistribution& dist,
                          const OracleLimits& limits) {
  Engine engine(shape, dist, limits);
  Rational cost = engine.solve(engine.full_mask(), false).cost;
  return OracleResult{std::move(cost), engine.extract(engine.full_mask(), false)};
}

OracleResult optimal_depth_first_cost(const TreeShape& shape, const IndependentDistribution& dist,
                                      const OracleLimits& limits) {
  Engine engine(shape, dist, limits);
  Rational cost = engine.solve(engine.full_mask(), true).cost;
  return OracleResult{std::move(cost), engine.extract(engine.full_mask(), true)};
}

std::vector<int> all_optimal_first_probes(const TreeShape& shape,
                                          const IndependentDistribution& dist,
                                          const OracleLimits& limits) {
  Engine engine(shape, dist, limits);
  return engine.first_probe_argmins();
}

Rational depth_first_cost_with_first_probe(const TreeShape& shape,
                                           const IndependentDistribution& dist, int leaf_node_id,
                                           const OracleLimits& limits) {
  Engine engine(shape, dist, limits);
  const TreeShape::Node& node = shape.node(leaf_node_id);
  if (!node.leaf) {
    throw StructureError("node '" + format_path(node.path) + "' is not a leaf");
  }
  return engine.forced_first_depth_first(node.leaf_index);
}

}  // namespace andor
