#include "andor/decision_tree.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "andor/errors.hpp"

namespace andor {

struct DecisionTree::Node {
  bool terminal = false;
  bool value = false;
  Path probe;
  std::shared_ptr<const Node> on_zero;
  std::shared_ptr<const Node> on_one;
};

DecisionTree DecisionTree::terminal(bool value) {
  auto node = std::make_shared<Node>();
  node->terminal = true;
  node->value = value;
  return DecisionTree(std::move(node));
}

DecisionTree DecisionTree::query(Path leaf, DecisionTree on_zero, DecisionTree on_one) {
  auto node = std::make_shared<Node>();
  node->terminal = false;
  node->probe = std::move(leaf);
  node->on_zero = std::move(on_zero.node_);
  node->on_one = std::move(on_one.node_);
  return DecisionTree(std::move(node));
}

bool DecisionTree::is_terminal() const { return node_->terminal; }

bool DecisionTree::value() const { return node_->value; }

const Path& DecisionTree::probe() const { return node_->probe; }

DecisionTree DecisionTree::branch(bool leaf_value) const {
  return DecisionTree(leaf_value ? node_->on_one : node_->on_zero);
}

namespace {

struct DtParser {
  std::string_view text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) advance();
  }

  [[noreturn]] void fail(const std::string& message) { throw ParseError(message, line, col); }

  std::string atom() {
    std::string out;
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) break;
      out += c;
      advance();
    }
    if (out.empty()) fail("expected a token");
    return out;
  }

  DecisionTree parse_node() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '0' || c == '1') {
      std::string tok = atom();
      if (tok == "0") return DecisionTree::terminal(false);
      if (tok == "1") return DecisionTree::terminal(true);
      fail("expected '0', '1' or '(ask ...)', got '" + tok + "'");
    }
    if (c != '(') fail("expected '0', '1' or '('");
    advance();  // '('
    skip_ws();
    std::string head = atom();
    if (head != "ask") fail("expected 'ask', got '" + head + "'");
    skip_ws();
    int path_line = line, path_col = col;
    std::string path_text = atom();
    Path probe;
    try {
      probe = parse_path(path_text);
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed leaf path '" + path_text + "'", path_line, path_col);
    }
    if (probe.empty()) {
      throw ParseError("the root is not a probeable leaf", path_line, path_col);
    }
    DecisionTree on_zero = parse_node();
    DecisionTree on_one = parse_node();
    skip_ws();
    if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
    advance();
    return DecisionTree::query(std::move(probe), std::move(on_zero), std::move(on_one));
  }

  DecisionTree parse() {
    DecisionTree tree = parse_node();
    skip_ws();
    if (pos < text.size()) fail("trailing input after decision tree");
    return tree;
  }
};

void serialize_node(std::ostringstream& out, const DecisionTree& tree) {
  if (tree.is_terminal()) {
    out << (tree.value() ? '1' : '0');
    return;
  }
  out << "(ask " << format_path(tree.probe()) << ' ';
  serialize_node(out, tree.branch(false));
  out << ' ';
  serialize_node(out, tree.branch(true));
  out << ')';
}

}  // namespace

DecisionTree parse_decision_tree(std::string_view text) { return DtParser{text}.parse(); }

std::string serialize_decision_tree(const DecisionTree& tree) {
  std::ostringstream out;
  serialize_node(out, tree);
  return out.str();
}

}  // namespace andor
