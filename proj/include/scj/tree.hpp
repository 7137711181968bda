#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scj {

// Rooted binary tree. Nodes are addressed by index; every internal node has
// exactly two children.
class PhyloTree {
 public:
  static constexpr int kNone = -1;

  struct Node {
    std::string name;
    int parent = kNone;
    std::array<int, 2> children{kNone, kNone};
  };

  int add_leaf(std::string name);
  // New internal node over two existing parentless nodes.
  int join(int left, int right, std::string name = {});

  std::size_t size() const { return nodes_.size(); }
  const Node& node(int v) const { return nodes_[static_cast<std::size_t>(v)]; }
  bool is_leaf(int v) const { return node(v).children[0] == kNone; }
  int parent(int v) const { return node(v).parent; }
  const std::array<int, 2>& children(int v) const { return node(v).children; }

  // The unique parentless node. Throws scj::Error if the tree is not
  // connected.
  int root() const;

  // Children before parents, left subtree before right.
  std::vector<int> postorder() const;
  std::vector<int> leaves() const;
  std::vector<int> internal_nodes() const;
  std::optional<int> find_leaf(std::string_view name) const;

  // Name for reports: the node's own label, or `n<index>` when unlabelled.
  std::string display_name(int v) const;

  // Throws unless rooted, connected, and leaf names are non-empty and unique.
  void validate() const;

 private:
  std::vector<Node> nodes_;
};

// Rooted binary Newick. Branch lengths are accepted and dropped; internal
// labels are kept. Non-binary trees are rejected.
PhyloTree parse_newick(std::string_view text);
std::string print_newick(const PhyloTree& tree);

}  // namespace scj
