#include "scj/tree.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "scj/error.hpp"

namespace scj {

int PhyloTree::add_leaf(std::string name) {
  nodes_.push_back(Node{std::move(name), kNone, {kNone, kNone}});
  return static_cast<int>(nodes_.size() - 1);
}

int PhyloTree::join(int left, int right, std::string name) {
  for (int c : {left, right}) {
    if (c < 0 || static_cast<std::size_t>(c) >= nodes_.size()) throw Error("join: node index out of range");
    if (nodes_[static_cast<std::size_t>(c)].parent != kNone) throw Error("join: node already has a parent");
  }
  if (left == right) throw Error("join: a node cannot be joined with itself");
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{std::move(name), kNone, {left, right}});
  nodes_[static_cast<std::size_t>(left)].parent = id;
  nodes_[static_cast<std::size_t>(right)].parent = id;
  return id;
}

int PhyloTree::root() const {
  int root = kNone;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].parent != kNone) continue;
    if (root != kNone) throw Error("tree has more than one root");
    root = static_cast<int>(v);
  }
  if (root == kNone) throw Error("tree is empty");
  return root;
}

std::vector<int> PhyloTree::postorder() const {
  std::vector<int> order;
  order.reserve(nodes_.size());
  std::vector<std::pair<int, bool>> stack{{root(), false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (expanded || is_leaf(v)) {
      order.push_back(v);
      continue;
    }
    stack.emplace_back(v, true);
    stack.emplace_back(children(v)[1], false);
    stack.emplace_back(children(v)[0], false);
  }
  return order;
}

std::vector<int> PhyloTree::leaves() const {
  std::vector<int> out;
  for (int v : postorder()) {
    if (is_leaf(v)) out.push_back(v);
  }
  return out;
}

std::vector<int> PhyloTree::internal_nodes() const {
  std::vector<int> out;
  for (int v : postorder()) {
    if (!is_leaf(v)) out.push_back(v);
  }
  return out;
}

std::optional<int> PhyloTree::find_leaf(std::string_view name) const {
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].children[0] == kNone && nodes_[v].name == name) return static_cast<int>(v);
  }
  return std::nullopt;
}

std::string PhyloTree::display_name(int v) const {
  const auto& n = node(v);
  return n.name.empty() ? "n" + std::to_string(v) : n.name;
}

void PhyloTree::validate() const {
  const auto order = postorder();
  if (order.size() != nodes_.size()) throw Error("tree is not connected");
  std::set<std::string> names;
  for (int v : order) {
    if (!is_leaf(v)) continue;
    const auto& name = node(v).name;
    if (name.empty()) throw Error("unnamed leaf");
    if (!names.insert(name).second) throw Error("duplicate leaf name '" + name + "'");
  }
}

namespace {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  PhyloTree parse() {
    skip_space();
    subtree();
    skip_space();
    if (peek() == ':') branch_length();
    skip_space();
    if (peek() != ';') fail("expected ';' after the root");
    ++pos_;
    skip_space();
    if (pos_ != text_.size()) fail("unexpected text after ';'");
    tree_.validate();
    return std::move(tree_);
  }

 private:
  static constexpr char kEnd = '\0';

  char peek() const { return pos_ < text_.size() ? text_[pos_] : kEnd; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, "newick: " + what);
  }

  std::string label() {
    skip_space();
    std::string out;
    if (peek() == '\'') {
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size()) fail("unterminated quoted label");
        char c = text_[pos_++];
        if (c == '\'') {
          if (peek() != '\'') break;
          ++pos_;
        }
        out.push_back(c);
      }
      return out;
    }
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' || c == ':' || c == ';') break;
      out.push_back(c);
      ++pos_;
    }
    return out;
  }

  void branch_length() {
    ++pos_;  // ':'
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                                   text_[pos_] == '-' || text_[pos_] == '+' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a branch length after ':'");
  }

  int subtree() {
    skip_space();
    if (peek() != '(') {
      std::string name = label();
      if (name.empty()) fail("expected a leaf label");
      return tree_.add_leaf(std::move(name));
    }
    ++pos_;
    std::vector<int> kids;
    for (;;) {
      kids.push_back(subtree());
      skip_space();
      if (peek() == ':') branch_length();
      skip_space();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ')') {
        ++pos_;
        break;
      }
      fail("expected ',' or ')'");
    }
    if (kids.size() != 2) {
      fail("non-binary node with " + std::to_string(kids.size()) + " children (only rooted binary trees are supported)");
    }
    std::string name = label();
    return tree_.join(kids[0], kids[1], std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  PhyloTree tree_;
};

bool needs_quotes(const std::string& name) {
  return std::any_of(name.begin(), name.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' || c == ':' || c == ';' ||
           c == '\'';
  });
}

std::string quoted(const std::string& name) {
  if (!needs_quotes(name)) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  return out + "'";
}

}  // namespace

PhyloTree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

std::string print_newick(const PhyloTree& tree) {
  // Iterative so deep combs do not recurse.
  std::string out;
  std::vector<std::pair<int, int>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto& [v, state] = stack.back();
    if (tree.is_leaf(v)) {
      out += quoted(tree.node(v).name);
      stack.pop_back();
      continue;
    }
    if (state == 0) {
      out += '(';
      state = 1;
      stack.emplace_back(tree.children(v)[0], 0);
    } else if (state == 1) {
      out += ',';
      state = 2;
      stack.emplace_back(tree.children(v)[1], 0);
    } else {
      out += ')';
      out += quoted(tree.node(v).name);
      stack.pop_back();
    }
  }
  return out + ";\n";
}

}  // namespace scj
