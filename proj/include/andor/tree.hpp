#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "andor/rational.hpp"

namespace andor {

enum class Gate : uint8_t { And, Or };

Gate dual(Gate g);
std::string_view gate_name(Gate g);

// Index path from the root: {} is the root, {i} the i-th child of the root,
// {i, j} the j-th child of that node, and so on.
using Path = std::vector<int>;

std::string format_path(const Path& path);  // "1.0"; the root prints as "root"
Path parse_path(std::string_view text);     // throws std::invalid_argument

// A rooted gate tree. Internal nodes carry AND/OR kinds that strictly
// alternate along every root-to-leaf path; leaves are indexed densely in
// document order. Immutable after construction.
class TreeShape {
 public:
  struct Node {
    Gate gate = Gate::And;       // meaningful only when !leaf
    bool leaf = false;
    int parent = -1;             // node id; -1 for the root
    int depth = 0;
    std::vector<int> children;   // node ids, document order
    Path path;
    int leaf_index = -1;         // dense document-order numbering; -1 for gates
  };

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_[static_cast<size_t>(id)]; }
  int root() const { return 0; }
  int leaf_count() const { return static_cast<int>(leaf_ids_.size()); }
  const std::vector<int>& leaf_ids() const { return leaf_ids_; }
  int leaf_node(int leaf_index) const { return leaf_ids_[static_cast<size_t>(leaf_index)]; }
  int height() const { return height_; }

  // Node id for a path, or -1 when absent.
  int find(const Path& path) const;
  // Like find, but throws StructureError unless the path names a leaf.
  int require_leaf(const Path& path) const;

  bool is_ancestor(int node_id, int descendant_id) const;

  // True when the root is an AND gate, every child of the root is an OR
  // gate, and every grandchild is a leaf. This is the class the priority
  // solver handles.
  bool is_and_rooted_height2() const;

 private:
  friend class TreeAssembler;
  std::vector<Node> nodes_;
  std::vector<int> leaf_ids_;
  std::map<Path, int> by_path_;
  int height_ = 0;
};

// Recursive description used to build shapes programmatically. The same
// normalization as the parser applies: a leaf placed directly under the
// root is wrapped into a single-child gate of the dual kind.
class NodeSpec {
 public:
  static NodeSpec gate(Gate g, std::vector<NodeSpec> children);
  static NodeSpec leaf(Rational p_zero);  // probability of value 0, must be in [0,1]

  bool is_leaf() const { return leaf_; }
  Gate gate_kind() const { return gate_; }
  const std::vector<NodeSpec>& children() const { return children_; }
  const Rational& p_zero() const { return p_zero_; }

 private:
  NodeSpec() = default;
  bool leaf_ = false;
  Gate gate_ = Gate::And;
  std::vector<NodeSpec> children_;
  Rational p_zero_;
};

// One exact probability of value 0 per leaf, indexed like the shape's
// leaves. A distribution is admissible when every probability is strictly
// between 0 and 1.
class IndependentDistribution {
 public:
  IndependentDistribution() = default;
  explicit IndependentDistribution(std::vector<Rational> p_zero_by_leaf);

  int leaf_count() const { return static_cast<int>(p_zero_.size()); }
  const Rational& p_zero(int leaf_index) const { return p_zero_[static_cast<size_t>(leaf_index)]; }
  const std::vector<Rational>& values() const { return p_zero_; }

  bool admissible() const;
  bool iid() const;

 private:
  std::vector<Rational> p_zero_;
};

struct Instance {
  TreeShape shape;
  IndependentDistribution dist;
};

// Builds and validates a shape+distribution pair from a NodeSpec. The root
// must be a gate; gate kinds must alternate; the tree must have at least
// one leaf.
Instance build_instance(const NodeSpec& root);

// Reads the s-expression tree format:
//   tree  := "(" kind child+ ")"
//   kind  := "and" | "or"
//   child := tree | prob
// where prob is "a/b", "0", "1", or a decimal. Throws ParseError with
// line/column on malformed text, and rejects probabilities outside [0,1].
Instance parse_tree(std::string_view text);

// Canonical serialization: single spaces, probabilities in lowest terms.
// parse_tree(serialize_tree(x)) reproduces x, and serializing again yields
// byte-identical text.
std::string serialize_tree(const TreeShape& shape, const IndependentDistribution& dist);

}  // namespace andor
