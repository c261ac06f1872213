#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace treemine {

using LabelId = std::int32_t;
using NodeId = std::int32_t;

inline constexpr LabelId kVirtualRootLabel = -1;
inline constexpr NodeId kNoNode = -1;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct RegionalTriple {
  std::int32_t begin = 0;
  std::int32_t end = 0;
  std::int32_t level = 0;

  bool operator==(const RegionalTriple&) const = default;
};

class LabelTable {
 public:
  LabelTable() = default;
  // Ids are dense and follow the lexicographic order of the names.
  explicit LabelTable(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(LabelId id) const;
  LabelId find(std::string_view name) const;  // kVirtualRootLabel if absent
  bool contains(std::string_view name) const { return find(name) != kVirtualRootLabel; }
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, LabelId> ids_;
};

// Regional stamps from a preorder parent array. One counter, bumped on entry
// and on exit, starting at 1.
std::vector<RegionalTriple> encode_regions(std::span<const NodeId> parents);

// One list per label id, each holding preorder node ids (hence begin order).
std::vector<std::vector<NodeId>> build_inverted_lists(std::span<const LabelId> labels,
                                                      std::size_t label_count);

class DataTree {
 public:
  DataTree() = default;
  // Nodes in preorder; parents[0] == kNoNode and parents[k] < k otherwise.
  DataTree(LabelTable labels, std::vector<LabelId> node_labels, std::vector<NodeId> parents);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  bool has_virtual_root() const noexcept { return !labels_.empty() && labels_[0] == kVirtualRootLabel; }

  LabelId label(NodeId n) const { return labels_[n]; }
  NodeId parent(NodeId n) const { return parents_[n]; }
  const RegionalTriple& region(NodeId n) const { return regions_[n]; }
  // One past the last preorder id in the subtree of n.
  NodeId subtree_end(NodeId n) const { return subtree_end_[n]; }
  std::span<const NodeId> children(NodeId n) const;

  bool is_ancestor(NodeId n1, NodeId n2) const {
    const auto& a = regions_[n1];
    const auto& b = regions_[n2];
    return b.begin > a.begin && a.end > b.end;
  }
  bool on_same_path(NodeId a, NodeId b) const { return a == b || is_ancestor(a, b) || is_ancestor(b, a); }

  const LabelTable& label_table() const noexcept { return table_; }
  std::size_t label_count() const noexcept { return table_.size(); }
  std::span<const NodeId> inverted_list(LabelId l) const { return lists_[l]; }
  // Index of n inside inverted_list(label(n)).
  std::size_t list_position(NodeId n) const { return list_pos_[n]; }

  std::span<const LabelId> node_labels() const noexcept { return labels_; }
  std::span<const NodeId> parents() const noexcept { return parents_; }

 private:
  LabelTable table_;
  std::vector<LabelId> labels_;
  std::vector<NodeId> parents_;
  std::vector<RegionalTriple> regions_;
  std::vector<NodeId> subtree_end_;
  std::vector<NodeId> child_offsets_;
  std::vector<NodeId> child_ids_;
  std::vector<std::vector<NodeId>> lists_;
  std::vector<std::uint32_t> list_pos_;
};

enum class InputFormat { lines, xml };

DataTree load_forest(std::string_view text);
DataTree load_xml(std::string_view text);
DataTree load_tree(std::string_view text, InputFormat format);

// Inverse of load_forest: one line per tree under the virtual root.
std::string serialize(const DataTree& tree);

}  // namespace treemine
