#pragma once

#include <cstdint>
#include <vector>

#include "andor/tree.hpp"

namespace andor {

// Per-node resolution status: -1 unknown, 0 or 1 known.
using Resolution = std::vector<int8_t>;

// A partial assignment of leaf values. Immutable: `with` returns an
// extended copy.
class KnowledgeState {
 public:
  explicit KnowledgeState(const TreeShape& shape);

  KnowledgeState with(const Path& leaf, bool value) const;
  KnowledgeState with_leaf_index(int leaf_index, bool value) const;

  bool assigned(int leaf_index) const { return values_[static_cast<size_t>(leaf_index)] >= 0; }
  int8_t value(int leaf_index) const { return values_[static_cast<size_t>(leaf_index)]; }
  const TreeShape& shape() const { return *shape_; }

 private:
  const TreeShape* shape_;
  std::vector<int8_t> values_;  // by leaf index; -1 unassigned
};

// The unique fixpoint induced by the assignment: an OR node is 1 if some
// child is 1 and 0 if all children are 0; an AND node dually. Indexed by
// node id.
Resolution resolve(const TreeShape& shape, const KnowledgeState& state);

// Unassigned leaves whose ancestor chain contains no resolved node; probing
// any other leaf cannot affect the root's resolution. Returns node ids in
// document order.
std::vector<int> relevant_leaves(const TreeShape& shape, const KnowledgeState& state);

}  // namespace andor
