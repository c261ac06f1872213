#include "treemine/tree_store.hpp"

#include <algorithm>
#include <sstream>

#include "tree_builder.hpp"

namespace treemine {

LabelTable::LabelTable(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  for (std::size_t i = 0; i < names_.size(); ++i) ids_.emplace(names_[i], static_cast<LabelId>(i));
}

const std::string& LabelTable::name(LabelId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= names_.size()) throw std::out_of_range("unknown label id");
  return names_[id];
}

LabelId LabelTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  return it == ids_.end() ? kVirtualRootLabel : it->second;
}

std::vector<RegionalTriple> encode_regions(std::span<const NodeId> parents) {
  const std::size_t n = parents.size();
  std::vector<RegionalTriple> out(n);
  if (n == 0) return out;

  // Preorder input: a node's subtree closes right before the next node whose
  // parent is a proper ancestor, so a stack of open nodes is enough.
  std::vector<NodeId> open;
  std::int32_t stamp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const NodeId p = parents[k];
    while (!open.empty() && open.back() != p) {
      out[open.back()].end = ++stamp;
      open.pop_back();
    }
    out[k].begin = ++stamp;
    out[k].level = static_cast<std::int32_t>(open.size());
    open.push_back(static_cast<NodeId>(k));
  }
  while (!open.empty()) {
    out[open.back()].end = ++stamp;
    open.pop_back();
  }
  return out;
}

std::vector<std::vector<NodeId>> build_inverted_lists(std::span<const LabelId> labels,
                                                      std::size_t label_count) {
  std::vector<std::vector<NodeId>> lists(label_count);
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == kVirtualRootLabel) continue;
    lists[labels[k]].push_back(static_cast<NodeId>(k));
  }
  return lists;
}

DataTree::DataTree(LabelTable labels, std::vector<LabelId> node_labels, std::vector<NodeId> parents)
    : table_(std::move(labels)), labels_(std::move(node_labels)), parents_(std::move(parents)) {
  const std::size_t n = labels_.size();
  if (parents_.size() != n) throw std::invalid_argument("label and parent arrays differ in length");
  for (std::size_t k = 0; k < n; ++k) {
    const bool root = k == 0;
    if (root != (parents_[k] == kNoNode) || (!root && (parents_[k] < 0 || parents_[k] >= static_cast<NodeId>(k))))
      throw std::invalid_argument("parent array is not a preorder tree");
    if (labels_[k] == kVirtualRootLabel ? k != 0 : (labels_[k] < 0 || static_cast<std::size_t>(labels_[k]) >= table_.size()))
      throw std::invalid_argument("node label out of range");
  }

  regions_ = encode_regions(parents_);

  subtree_end_.assign(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    if (subtree_end_[k] == 0) subtree_end_[k] = static_cast<NodeId>(k + 1);
    if (parents_[k] != kNoNode)
      subtree_end_[parents_[k]] = std::max(subtree_end_[parents_[k]], subtree_end_[k]);
  }

  child_offsets_.assign(n + 1, 0);
  for (std::size_t k = 1; k < n; ++k) ++child_offsets_[parents_[k] + 1];
  for (std::size_t k = 0; k < n; ++k) child_offsets_[k + 1] += child_offsets_[k];
  child_ids_.resize(n > 0 ? n - 1 : 0);
  std::vector<NodeId> fill(child_offsets_.begin(), child_offsets_.end() - 1);
  for (std::size_t k = 1; k < n; ++k) child_ids_[fill[parents_[k]]++] = static_cast<NodeId>(k);

  lists_ = build_inverted_lists(labels_, table_.size());
  list_pos_.assign(n, 0);
  for (const auto& list : lists_)
    for (std::size_t i = 0; i < list.size(); ++i) list_pos_[list[i]] = static_cast<std::uint32_t>(i);
}

std::span<const NodeId> DataTree::children(NodeId n) const {
  return std::span<const NodeId>(child_ids_).subspan(child_offsets_[n], child_offsets_[n + 1] - child_offsets_[n]);
}

namespace detail {

DataTree build_tree(std::vector<RawTree> trees) {
  std::vector<std::string> names;
  for (const auto& t : trees) names.insert(names.end(), t.names.begin(), t.names.end());
  LabelTable table(std::move(names));

  std::vector<LabelId> labels;
  std::vector<NodeId> parents;
  const bool forest = trees.size() > 1;
  if (forest) {
    labels.push_back(kVirtualRootLabel);
    parents.push_back(kNoNode);
  }
  for (const auto& t : trees) {
    const NodeId base = static_cast<NodeId>(labels.size());
    for (std::size_t k = 0; k < t.names.size(); ++k) {
      labels.push_back(table.find(t.names[k]));
      if (t.parents[k] == kNoNode)
        parents.push_back(forest ? 0 : kNoNode);
      else
        parents.push_back(base + t.parents[k]);
    }
  }
  return DataTree(std::move(table), std::move(labels), std::move(parents));
}

}  // namespace detail

DataTree load_forest(std::string_view text) {
  std::vector<detail::RawTree> trees;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;

    detail::RawTree tree;
    std::vector<NodeId> open;
    bool closed = false;
    std::istringstream tokens{std::string(line)};
    std::string tok;
    while (tokens >> tok) {
      if (tok == "-1") {
        if (open.empty()) throw ParseError(line_no, tree.names.empty() ? "empty tree" : "unbalanced backtrack marker");
        open.pop_back();
        closed = open.empty();
        continue;
      }
      if (closed) throw ParseError(line_no, "label after the root was closed");
      tree.parents.push_back(open.empty() ? kNoNode : open.back());
      open.push_back(static_cast<NodeId>(tree.names.size()));
      tree.names.push_back(tok);
    }
    if (tree.names.empty()) throw ParseError(line_no, "empty tree");
    trees.push_back(std::move(tree));
  }
  if (trees.empty()) throw ParseError(line_no, "no trees in input");
  return detail::build_tree(std::move(trees));
}

DataTree load_tree(std::string_view text, InputFormat format) {
  return format == InputFormat::xml ? load_xml(text) : load_forest(text);
}

namespace {

void serialize_subtree(const DataTree& t, NodeId n, std::string& out, bool close) {
  out += t.label_table().name(t.label(n));
  for (NodeId c : t.children(n)) {
    out += ' ';
    serialize_subtree(t, c, out, true);
  }
  if (close) out += " -1";
}

}  // namespace

std::string serialize(const DataTree& tree) {
  std::string out;
  if (tree.empty()) return out;
  if (tree.has_virtual_root()) {
    for (NodeId c : tree.children(0)) {
      serialize_subtree(tree, c, out, false);
      out += '\n';
    }
  } else {
    serialize_subtree(tree, 0, out, false);
    out += '\n';
  }
  return out;
}

}  // namespace treemine
