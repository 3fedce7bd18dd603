#include "andor/knowledge.hpp"

#include "andor/errors.hpp"

namespace andor {

KnowledgeState::KnowledgeState(const TreeShape& shape)
    : shape_(&shape), values_(static_cast<size_t>(shape.leaf_count()), int8_t{-1}) {}

KnowledgeState KnowledgeState::with(const Path& leaf, bool value) const {
  return with_leaf_index(shape_->node(shape_->require_leaf(leaf)).leaf_index, value);
}

KnowledgeState KnowledgeState::with_leaf_index(int leaf_index, bool value) const {
  KnowledgeState next = *this;
  next.values_[static_cast<size_t>(leaf_index)] = value ? 1 : 0;
  return next;
}

Resolution resolve(const TreeShape& shape, const KnowledgeState& state) {
  Resolution res(static_cast<size_t>(shape.node_count()), int8_t{-1});
  // Node ids are in preorder, so a reverse sweep sees children before
  // parents; one pass reaches the fixpoint.
  for (int id = shape.node_count() - 1; id >= 0; --id) {
    const TreeShape::Node& node = shape.node(id);
    if (node.leaf) {
      res[static_cast<size_t>(id)] = state.value(node.leaf_index);
      continue;
    }
    const int8_t wins = node.gate == Gate::And ? 0 : 1;  // annihilator value
    bool all_known = true;
    int8_t value = -1;
    for (int child : node.children) {
      int8_t cv = res[static_cast<size_t>(child)];
      if (cv == wins) {
        value = wins;
        break;
      }
      if (cv == -1) all_known = false;
    }
    if (value == wins) {
      res[static_cast<size_t>(id)] = wins;
    } else if (all_known) {
      res[static_cast<size_t>(id)] = static_cast<int8_t>(1 - wins);
    }
  }
  return res;
}

std::vector<int> relevant_leaves(const TreeShape& shape, const KnowledgeState& state) {
  Resolution res = resolve(shape, state);
  // reachable[id]: no resolved node strictly above id.
  std::vector<char> reachable(static_cast<size_t>(shape.node_count()), 0);
  reachable[static_cast<size_t>(shape.root())] = 1;
  std::vector<int> out;
  for (int id = 1; id < shape.node_count(); ++id) {
    const TreeShape::Node& node = shape.node(id);
    reachable[static_cast<size_t>(id)] =
        reachable[static_cast<size_t>(node.parent)] && res[static_cast<size_t>(node.parent)] == -1;
    if (node.leaf && reachable[static_cast<size_t>(id)] && !state.assigned(node.leaf_index)) {
      out.push_back(id);
    }
  }
  return out;
}

}  // namespace andor
