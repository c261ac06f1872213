#include "treemine/pattern.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace treemine {

Pattern::Pattern(std::vector<PatternNode> nodes) : nodes_(std::move(nodes)) {
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const int p = nodes_[k].parent;
    if (k == 0) {
      if (p != kNoParent) throw std::invalid_argument("pattern root must not have a parent");
      continue;
    }
    if (p < 0 || p >= static_cast<int>(k)) throw std::invalid_argument("pattern parent must precede its child");
    // Depth-first order: the parent is the previous node or one of its ancestors.
    int a = static_cast<int>(k) - 1;
    while (a != kNoParent && a != p) a = nodes_[a].parent;
    if (a != p) throw std::invalid_argument("pattern nodes are not in depth-first order");
  }
}

std::vector<int> Pattern::rightmost_path() const {
  std::vector<int> path;
  for (int k = rml(); k != kNoParent; k = nodes_[k].parent) path.push_back(k);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<int> Pattern::children(int k) const {
  std::vector<int> out;
  for (int c = k + 1; c < static_cast<int>(nodes_.size()); ++c)
    if (nodes_[c].parent == k) out.push_back(c);
  return out;
}

bool Pattern::is_ancestor(int a, int b) const {
  for (int k = nodes_[b].parent; k != kNoParent; k = nodes_[k].parent)
    if (k == a) return true;
  return false;
}

Pattern Pattern::extended(int parent, LabelId label) const {
  if (nodes_.empty()) {
    if (parent != kNoParent) throw std::invalid_argument("first node must be a root");
    return Pattern(label);
  }
  int a = rml();
  while (a != kNoParent && a != parent) a = nodes_[a].parent;
  if (a == kNoParent) throw std::invalid_argument("extension point is not on the rightmost path");
  Pattern out = *this;
  out.nodes_.push_back({label, parent});
  return out;
}

Pattern Pattern::prefix() const {
  Pattern out = *this;
  out.nodes_.pop_back();
  return out;
}

std::size_t PatternHash::operator()(const Pattern& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (const auto& n : p.nodes()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(n.label)) * 0x9E3779B97F4A7C15ull;
    h *= 1099511628211ull;
    h ^= static_cast<std::size_t>(n.parent + 1);
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// Children of k are exactly the nodes after k whose parent is k, in order;
// walking subtree ranges avoids building child lists.
int subtree_end(const Pattern& p, int k) {
  int e = k + 1;
  while (e < static_cast<int>(p.size()) && p.is_ancestor(k, e)) ++e;
  return e;
}

}  // namespace

std::strong_ordering subtree_order_cmp(const Pattern& p1, int n1, const Pattern& p2, int n2) {
  if (auto c = p1.label(n1) <=> p2.label(n2); c != 0) return c;
  const int end1 = subtree_end(p1, n1);
  const int end2 = subtree_end(p2, n2);
  int c1 = n1 + 1;
  int c2 = n2 + 1;
  while (c1 < end1 && c2 < end2) {
    if (auto c = subtree_order_cmp(p1, c1, p2, c2); c != 0) return c;
    c1 = subtree_end(p1, c1);
    c2 = subtree_end(p2, c2);
  }
  if (c1 < end1) return std::strong_ordering::less;
  if (c2 < end2) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering pattern_order_cmp(const Pattern& p1, const Pattern& p2) {
  if (p1.empty() || p2.empty()) return p2.size() <=> p1.size();
  return subtree_order_cmp(p1, 0, p2, 0);
}

bool canonical_check(const Pattern& p) {
  for (int k = 0; k < static_cast<int>(p.size()); ++k) {
    int prev = -1;
    for (int c = k + 1, end = subtree_end(p, k); c < end; c = subtree_end(p, c)) {
      if (prev >= 0 && subtree_order_cmp(p, prev, p, c) > 0) return false;
      prev = c;
    }
  }
  return true;
}

bool canonical_extension_check(const Pattern& p) {
  for (int k : p.rightmost_path()) {
    int prev = -1;
    int last = -1;
    for (int c = k + 1, end = subtree_end(p, k); c < end; c = subtree_end(p, c)) {
      prev = last;
      last = c;
    }
    if (prev >= 0 && subtree_order_cmp(p, prev, p, last) > 0) return false;
  }
  return true;
}

namespace {

void append_subtree(const Pattern& p, int k, int new_parent, std::vector<PatternNode>& out) {
  const int self = static_cast<int>(out.size());
  out.push_back({p.label(k), new_parent});
  for (int c = k + 1, end = subtree_end(p, k); c < end; c = subtree_end(p, c)) append_subtree(p, c, self, out);
}

Pattern canonical_subtree(const Pattern& p, int k) {
  std::vector<Pattern> kids;
  for (int c = k + 1, end = subtree_end(p, k); c < end; c = subtree_end(p, c)) kids.push_back(canonical_subtree(p, c));
  std::sort(kids.begin(), kids.end(), [](const Pattern& a, const Pattern& b) { return pattern_order_cmp(a, b) < 0; });
  std::vector<PatternNode> nodes{{p.label(k), kNoParent}};
  for (const auto& kid : kids) append_subtree(kid, 0, 0, nodes);
  return Pattern(std::move(nodes));
}

}  // namespace

Pattern canonicalize(const Pattern& p) {
  if (p.empty()) return p;
  return canonical_subtree(p, 0);
}

Pattern subtree(const Pattern& p, int k) {
  std::vector<PatternNode> nodes;
  append_subtree(p, k, kNoParent, nodes);
  return Pattern(std::move(nodes));
}

std::optional<Pattern> child_join(const Pattern& left, const Pattern& right) {
  if (left.size() < 2 || left.size() != right.size() || left.attach() != right.attach()) return std::nullopt;
  return left.extended(left.rml(), right.label(right.rml()));
}

std::optional<Pattern> cousin_join(const Pattern& left, const Pattern& right) {
  if (left.size() < 2 || left.size() != right.size() || right.attach() > left.attach()) return std::nullopt;
  return left.extended(right.attach(), right.label(right.rml()));
}

std::string encode(const Pattern& p, const LabelTable& labels) {
  std::string out;
  std::vector<int> open;
  for (int k = 0; k < static_cast<int>(p.size()); ++k) {
    while (!open.empty() && open.back() != p.parent(k)) {
      out += " -1";
      open.pop_back();
    }
    if (k > 0) out += ' ';
    out += labels.name(p.label(k));
    open.push_back(k);
  }
  // The root stays open, matching the tree file convention.
  for (std::size_t k = 1; k < open.size(); ++k) out += " -1";
  return out;
}

Pattern decode(std::string_view text, const LabelTable& labels) {
  std::vector<PatternNode> nodes;
  std::vector<int> open;
  bool closed = false;
  std::istringstream tokens{std::string(text)};
  std::string tok;
  while (tokens >> tok) {
    if (tok == "-1") {
      if (open.empty()) throw ParseError(1, "unbalanced backtrack marker in pattern");
      open.pop_back();
      closed = open.empty();
      continue;
    }
    if (closed) throw ParseError(1, "pattern has more than one root");
    const LabelId id = labels.find(tok);
    if (id == kVirtualRootLabel) throw ParseError(1, "unknown label '" + tok + "' in pattern");
    nodes.push_back({id, open.empty() ? kNoParent : open.back()});
    open.push_back(static_cast<int>(nodes.size()) - 1);
  }
  if (nodes.empty()) throw ParseError(1, "empty pattern");
  return Pattern(std::move(nodes));
}

}  // namespace treemine
