#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treemine/tree_store.hpp"

namespace treemine {

inline constexpr int kNoParent = -1;

struct PatternNode {
  LabelId label = 0;
  int parent = kNoParent;

  bool operator==(const PatternNode&) const = default;
};

// Unordered tree pattern with descendant edges, stored by depth-first
// position. The node with the largest position is the rightmost leaf.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(LabelId root) : nodes_{{root, kNoParent}} {}
  // Throws std::invalid_argument unless the nodes form a depth-first order.
  explicit Pattern(std::vector<PatternNode> nodes);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  LabelId label(int k) const { return nodes_[k].label; }
  int parent(int k) const { return nodes_[k].parent; }
  const std::vector<PatternNode>& nodes() const noexcept { return nodes_; }

  int rml() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  // Attach position of the rightmost leaf, i.e. the i of P_x^i.
  int attach() const { return nodes_.back().parent; }
  std::vector<int> rightmost_path() const;
  std::vector<int> children(int k) const;
  bool is_ancestor(int a, int b) const;

  // Adds a node as the new rightmost leaf; parent must lie on the rightmost path.
  Pattern extended(int parent, LabelId label) const;
  // The immediate prefix: this pattern without its rightmost leaf.
  Pattern prefix() const;

  bool operator==(const Pattern&) const = default;

 private:
  std::vector<PatternNode> nodes_;
};

struct PatternHash {
  std::size_t operator()(const Pattern& p) const noexcept;
};

// The pattern order: root labels first, then child subtrees left to right.
// A pattern whose child list extends the other's is the smaller one.
std::strong_ordering pattern_order_cmp(const Pattern& p1, const Pattern& p2);

// Subtree comparison inside (possibly different) patterns.
std::strong_ordering subtree_order_cmp(const Pattern& p1, int n1, const Pattern& p2, int n2);

// Children sorted non-decreasingly at every node.
bool canonical_check(const Pattern& p);

// Same answer as canonical_check when p.prefix() is known to be canonical;
// only the rightmost path can be out of order then.
bool canonical_extension_check(const Pattern& p);

Pattern canonicalize(const Pattern& p);

// Subtree rooted at k, renumbered from 0.
Pattern subtree(const Pattern& p, int k);

// Joins of two elements of one class (same immediate prefix).
std::optional<Pattern> child_join(const Pattern& left, const Pattern& right);
std::optional<Pattern> cousin_join(const Pattern& left, const Pattern& right);

std::string encode(const Pattern& p, const LabelTable& labels);
Pattern decode(std::string_view text, const LabelTable& labels);

}  // namespace treemine
