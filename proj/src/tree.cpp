#include "andor/tree.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "andor/errors.hpp"

namespace andor {

Gate dual(Gate g) { return g == Gate::And ? Gate::Or : Gate::And; }

std::string_view gate_name(Gate g) { return g == Gate::And ? "and" : "or"; }

std::string format_path(const Path& path) {
  if (path.empty()) return "root";
  std::string out;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

Path parse_path(std::string_view text) {
  if (text == "root") return {};
  Path path;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t dot = text.find('.', pos);
    std::string_view part = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
    if (part.empty()) throw std::invalid_argument("malformed path '" + std::string(text) + "'");
    int value = 0;
    for (char c : part) {
      if (c < '0' || c > '9') {
        throw std::invalid_argument("malformed path '" + std::string(text) + "'");
      }
      value = value * 10 + (c - '0');
    }
    path.push_back(value);
    if (dot == std::string_view::npos) break;
    pos = dot + 1;
  }
  return path;
}

int TreeShape::find(const Path& path) const {
  auto it = by_path_.find(path);
  return it == by_path_.end() ? -1 : it->second;
}

int TreeShape::require_leaf(const Path& path) const {
  int id = find(path);
  if (id < 0) {
    throw StructureError("unknown node path '" + format_path(path) + "'");
  }
  if (!node(id).leaf) {
    throw StructureError("path '" + format_path(path) + "' names a gate, not a leaf");
  }
  return id;
}

bool TreeShape::is_ancestor(int node_id, int descendant_id) const {
  int cur = descendant_id;
  while (cur >= 0) {
    if (cur == node_id) return true;
    cur = node(cur).parent;
  }
  return false;
}

bool TreeShape::is_and_rooted_height2() const {
  const Node& r = node(root());
  if (r.leaf || r.gate != Gate::And) return false;
  for (int child : r.children) {
    const Node& gate = node(child);
    if (gate.leaf) return false;
    for (int grand : gate.children) {
      if (!node(grand).leaf) return false;
    }
  }
  return true;
}

NodeSpec NodeSpec::gate(Gate g, std::vector<NodeSpec> children) {
  NodeSpec spec;
  spec.leaf_ = false;
  spec.gate_ = g;
  spec.children_ = std::move(children);
  return spec;
}

NodeSpec NodeSpec::leaf(Rational p_zero) {
  if (p_zero < 0 || p_zero > 1) {
    throw DomainError("leaf probability " + to_string(p_zero) + " out of range [0,1]");
  }
  NodeSpec spec;
  spec.leaf_ = true;
  spec.p_zero_ = std::move(p_zero);
  return spec;
}

IndependentDistribution::IndependentDistribution(std::vector<Rational> p_zero_by_leaf)
    : p_zero_(std::move(p_zero_by_leaf)) {
  for (const Rational& p : p_zero_) {
    if (p < 0 || p > 1) {
      throw DomainError("leaf probability " + to_string(p) + " out of range [0,1]");
    }
  }
}

bool IndependentDistribution::admissible() const {
  for (const Rational& p : p_zero_) {
    if (p <= 0 || p >= 1) return false;
  }
  return !p_zero_.empty();
}

bool IndependentDistribution::iid() const {
  for (const Rational& p : p_zero_) {
    if (p != p_zero_.front()) return false;
  }
  return true;
}

// Builds the flat node array. Shared by the parser and build_instance so
// normalization and validation cannot diverge.
class TreeAssembler {
 public:
  Instance assemble(const NodeSpec& root) {
    if (root.is_leaf()) {
      throw DomainError("tree root must be a gate");
    }
    // Wrap bare leaves directly under the root so every root child is a
    // gate; a one-leaf gate is equivalent to the leaf itself.
    NodeSpec normalized = root;
    std::vector<NodeSpec> children;
    children.reserve(root.children().size());
    for (const NodeSpec& child : root.children()) {
      if (child.is_leaf()) {
        children.push_back(NodeSpec::gate(dual(root.gate_kind()), {child}));
      } else {
        children.push_back(child);
      }
    }
    normalized = NodeSpec::gate(root.gate_kind(), std::move(children));

    add(normalized, /*parent=*/-1, /*depth=*/0, Path{});
    shape_.height_ = 0;
    for (const auto& n : shape_.nodes_) {
      shape_.height_ = std::max(shape_.height_, n.depth);
    }
    if (shape_.leaf_ids_.empty()) {
      throw DomainError("tree has no leaves");
    }
    return Instance{std::move(shape_), IndependentDistribution(std::move(probs_))};
  }

 private:
  void add(const NodeSpec& spec, int parent, int depth, Path path) {
    int id = static_cast<int>(shape_.nodes_.size());
    TreeShape::Node node;
    node.parent = parent;
    node.depth = depth;
    node.path = path;
    if (spec.is_leaf()) {
      node.leaf = true;
      node.leaf_index = static_cast<int>(shape_.leaf_ids_.size());
      shape_.leaf_ids_.push_back(id);
      probs_.push_back(spec.p_zero());
      shape_.nodes_.push_back(std::move(node));
    } else {
      if (spec.children().empty()) {
        throw DomainError("gate at '" + format_path(path) + "' has no children");
      }
      if (parent >= 0) {
        Gate parent_gate = shape_.nodes_[static_cast<size_t>(parent)].gate;
        if (spec.gate_kind() != dual(parent_gate)) {
          throw DomainError("gate kinds do not alternate at '" + format_path(path) + "'");
        }
      }
      node.leaf = false;
      node.gate = spec.gate_kind();
      shape_.nodes_.push_back(std::move(node));
      for (size_t i = 0; i < spec.children().size(); ++i) {
        Path child_path = path;
        child_path.push_back(static_cast<int>(i));
        int child_id = static_cast<int>(shape_.nodes_.size());
        shape_.nodes_[static_cast<size_t>(id)].children.push_back(child_id);
        add(spec.children()[i], id, depth + 1, std::move(child_path));
      }
    }
    shape_.by_path_[shape_.nodes_[static_cast<size_t>(id)].path] = id;
  }

  TreeShape shape_;
  std::vector<Rational> probs_;
};

Instance build_instance(const NodeSpec& root) { return TreeAssembler{}.assemble(root); }

namespace {

struct Token {
  enum class Kind { LParen, RParen, Atom, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= text_.size()) {
      tok.kind = Token::Kind::End;
      return tok;
    }
    char c = text_[pos_];
    if (c == '(') {
      tok.kind = Token::Kind::LParen;
      tok.text = "(";
      advance();
      return tok;
    }
    if (c == ')') {
      tok.kind = Token::Kind::RParen;
      tok.text = ")";
      advance();
      return tok;
    }
    tok.kind = Token::Kind::Atom;
    while (pos_ < text_.size()) {
      char a = text_[pos_];
      if (a == '(' || a == ')' || std::isspace(static_cast<unsigned char>(a))) break;
      tok.text += a;
      advance();
    }
    return tok;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : lexer_(text) { look_ = lexer_.next(); }

  Instance parse() {
    if (look_.kind != Token::Kind::LParen) {
      throw ParseError("expected '('", look_.line, look_.col);
    }
    NodeSpec root = parse_node();
    if (look_.kind != Token::Kind::End) {
      throw ParseError("trailing input after tree", look_.line, look_.col);
    }
    return build_instance(root);
  }

 private:
  Token take() {
    Token tok = look_;
    look_ = lexer_.next();
    return tok;
  }

  NodeSpec parse_node() {
    Token open = take();  // '('
    Token kind = take();
    if (kind.kind != Token::Kind::Atom || (kind.text != "and" && kind.text != "or")) {
      throw ParseError("expected gate kind 'and' or 'or'", kind.line, kind.col);
    }
    Gate gate = kind.text == "and" ? Gate::And : Gate::Or;
    std::vector<NodeSpec> children;
    while (true) {
      if (look_.kind == Token::Kind::RParen) {
        take();
        break;
      }
      if (look_.kind == Token::Kind::LParen) {
        children.push_back(parse_node());
      } else if (look_.kind == Token::Kind::Atom) {
        children.push_back(parse_leaf());
      } else {
        throw ParseError("unterminated list, expected ')'", open.line, open.col);
      }
    }
    if (children.empty()) {
      throw ParseError("gate has no children", open.line, open.col);
    }
    return NodeSpec::gate(gate, std::move(children));
  }

  NodeSpec parse_leaf() {
    Token tok = take();
    Rational p;
    try {
      p = parse_rational(tok.text);
    } catch (const std::invalid_argument&) {
      throw ParseError("expected a probability or a subtree, got '" + tok.text + "'", tok.line,
                       tok.col);
    }
    if (p < 0 || p > 1) {
      throw ParseError("probability " + to_string(p) + " out of range [0,1]", tok.line, tok.col);
    }
    return NodeSpec::leaf(std::move(p));
  }

  Lexer lexer_;
  Token look_;
};

void serialize_node(std::ostringstream& out, const TreeShape& shape,
                    const IndependentDistribution& dist, int id) {
  const TreeShape::Node& node = shape.node(id);
  if (node.leaf) {
    out << to_string(dist.p_zero(node.leaf_index));
    return;
  }
  out << '(' << gate_name(node.gate);
  for (int child : node.children) {
    out << ' ';
    serialize_node(out, shape, dist, child);
  }
  out << ')';
}

}  // namespace

Instance parse_tree(std::string_view text) { return TreeParser(text).parse(); }

std::string serialize_tree(const TreeShape& shape, const IndependentDistribution& dist) {
  std::ostringstream out;
  serialize_node(out, shape, dist, shape.root());
  return out.str();
}

}  // namespace andor
