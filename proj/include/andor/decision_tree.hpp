#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "andor/tree.hpp"

namespace andor {

// A deterministic querying algorithm in extensional form: internal nodes
// probe a leaf and branch on its value, terminals declare the root's value.
// Nodes are immutable and may be shared between branches, so copies are
// cheap and large extracted strategies stay compact.
class DecisionTree {
 public:
  static DecisionTree terminal(bool value);
  static DecisionTree query(Path leaf, DecisionTree on_zero, DecisionTree on_one);

  bool is_terminal() const;
  bool value() const;                           // terminals only
  const Path& probe() const;                    // queries only
  DecisionTree branch(bool leaf_value) const;

  // Stable identity of the underlying node, usable as a memoization key.
  const void* key() const { return node_.get(); }

 private:
  struct Node;
  explicit DecisionTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Text format:
//   dt   := "0" | "1" | "(" "ask" path dt dt ")"
// with the 0-branch first, e.g. "(ask 1.0 0 (ask 1.1 0 1))".
DecisionTree parse_decision_tree(std::string_view text);
std::string serialize_decision_tree(const DecisionTree& tree);

}  // namespace andor
