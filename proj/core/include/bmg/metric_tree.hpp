#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bmg/poset.hpp"
#include "bmg/rational.hpp"

namespace bmg {

/// Finite-depth tree of poset elements arranged in levels. Every non-root
/// node has exactly one parent on the previous level, strictly below it in
/// the order. Level 0 may hold several roots, so the structure is a forest
/// in data terms; branches from different roots share no node.
template <typename E>
class MetricTree {
 public:
  struct Node {
    E value;
    int parent;  // node id on the previous level, -1 for roots
    int level;
    std::vector<int> children;
  };

  explicit MetricTree(const Poset<E>* poset) : poset_(poset) {}

  const Poset<E>& poset() const { return *poset_; }
  bool empty() const { return nodes_.empty(); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t depth() const { return levels_.size(); }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& level(std::size_t n) const { return levels_[n]; }
  const std::vector<std::vector<int>>& levels() const { return levels_; }

  int add_root(E value) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{std::move(value), -1, 0, {}});
    if (levels_.empty()) levels_.emplace_back();
    levels_[0].push_back(id);
    return id;
  }

  int add_child(int parent, E value) {
    Node& p = nodes_[static_cast<std::size_t>(parent)];
    if (!poset_->leq(p.value, value) || p.value == value) {
      throw GameError(Fault::InvalidArgument,
                      "child must lie strictly above its parent");
    }
    const int lvl = p.level + 1;
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{std::move(value), parent, lvl, {}});
    nodes_[static_cast<std::size_t>(parent)].children.push_back(id);
    while (static_cast<int>(levels_.size()) <= lvl) levels_.emplace_back();
    levels_[static_cast<std::size_t>(lvl)].push_back(id);
    return id;
  }

  bool is_leaf(int id) const { return node(id).children.empty(); }

  /// Root-to-node chain of node ids.
  std::vector<int> path_to(int id) const {
    std::vector<int> path;
    for (int cur = id; cur != -1; cur = node(cur).parent) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    return path;
  }

  /// Pairs within one level that are compatible within `budget`, i.e.
  /// violations of the antichain property. Empty result = levels verified.
  std::vector<std::pair<int, int>> antichain_violations(std::size_t budget) const {
    std::vector<std::pair<int, int>> bad;
    for (const auto& lvl : levels_) {
      for (std::size_t i = 0; i < lvl.size(); ++i) {
        for (std::size_t j = i + 1; j < lvl.size(); ++j) {
          if (poset_->compatible_within(node(lvl[i]).value, node(lvl[j]).value, budget)) {
            bad.emplace_back(lvl[i], lvl[j]);
          }
        }
      }
    }
    return bad;
  }

  /// Enumerated elements (within `budget`) compatible with no member of the
  /// given level; empty result = the level is maximal against the budget.
  std::vector<E> budget_maximality_gaps(std::size_t level_index, std::size_t budget) const {
    std::vector<E> gaps;
    if (!poset_->enumerate) return gaps;
    for (const E& z : poset_->enumerate(budget)) {
      bool compat_with_some = false;
      for (int id : levels_[level_index]) {
        if (poset_->compatible_within(z, node(id).value, budget)) {
          compat_with_some = true;
          break;
        }
      }
      if (!compat_with_some) gaps.push_back(z);
    }
    return gaps;
  }

  /// GraphViz rendering, one rank per level.
  void write_dot(std::ostream& os) const {
    os << "digraph metric_tree {\n";
    os << "  rankdir=TB;\n  node [shape=box];\n";
    for (std::size_t n = 0; n < levels_.size(); ++n) {
      os << "  { rank=same;";
      for (int id : levels_[n]) os << " n" << id << ";";
      os << " }\n";
    }
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      os << "  n" << id << " [label=\"" << poset_->label_of(nodes_[id].value) << "\"];\n";
    }
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
      if (nodes_[id].parent != -1) {
        os << "  n" << nodes_[id].parent << " -> n" << id << ";\n";
      }
    }
    os << "}\n";
  }

  std::string dot() const {
    std::ostringstream os;
    write_dot(os);
    return os.str();
  }

 private:
  const Poset<E>* poset_;
  std::vector<Node> nodes_;
  std::vector<std::vector<int>> levels_;
};

/// Maximal root-to-leaf chain, stored as node ids.
struct Branch {
  std::vector<int> nodes;

  bool operator==(const Branch& other) const { return nodes == other.nodes; }
};

/// All branches, in depth-first order of the roots.
template <typename E>
std::vector<Branch> branches(const MetricTree<E>& tree) {
  std::vector<Branch> out;
  if (tree.empty()) return out;
  std::vector<int> path;
  auto dfs = [&](auto&& self, int id) -> void {
    path.push_back(id);
    if (tree.is_leaf(id)) {
      out.push_back(Branch{path});
    } else {
      for (int c : tree.node(id).children) self(self, c);
    }
    path.pop_back();
  };
  for (int root : tree.level(0)) dfs(dfs, root);
  return out;
}

template <typename E>
void require_branch(const MetricTree<E>& tree, const Branch& b) {
  if (b.nodes.empty()) throw GameError(Fault::NotABranch, "empty chain");
  if (tree.node(b.nodes.front()).parent != -1) {
    throw GameError(Fault::NotABranch, "chain does not start at a root");
  }
  for (std::size_t i = 0; i + 1 < b.nodes.size(); ++i) {
    if (tree.node(b.nodes[i + 1]).parent != b.nodes[i]) {
      throw GameError(Fault::NotABranch, "chain breaks parent links");
    }
  }
  if (!tree.is_leaf(b.nodes.back())) {
    throw GameError(Fault::NotABranch, "chain is not maximal");
  }
}

/// Distance on the branch space: 0 for equal branches, otherwise 1/(n+1)
/// where n is the deepest level at which the branches share a node, and 2
/// when they share none (distinct roots). The +1 shift keeps the root case
/// well defined; ultrametricity is preserved.
template <typename E>
Rational branch_distance(const MetricTree<E>& tree, const Branch& x, const Branch& y) {
  require_branch(tree, x);
  require_branch(tree, y);
  if (x == y) return Rational(0);
  std::size_t shared = 0;
  const std::size_t limit = std::min(x.nodes.size(), y.nodes.size());
  while (shared < limit && x.nodes[shared] == y.nodes[shared]) ++shared;
  if (shared == 0) return Rational(2);
  const auto deepest_shared_level = static_cast<std::int64_t>(shared - 1);
  return Rational(1, deepest_shared_level + 1);
}

}  // namespace bmg
