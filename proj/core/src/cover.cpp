#include <algorithm>
#include <unordered_set>
#include <vector>

#include "treemine/embedding_matcher.hpp"
#include "treemine/miner.hpp"

namespace treemine {

namespace {

// Depth-first renumbering of a tree given by labels and parents.
Pattern from_parents(const std::vector<LabelId>& labels, const std::vector<int>& parents) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<int>> kids(n);
  int root = 0;
  for (int k = 0; k < n; ++k) {
    if (parents[k] == kNoParent)
      root = k;
    else
      kids[parents[k]].push_back(k);
  }
  std::vector<PatternNode> nodes;
  nodes.reserve(n);
  std::vector<std::pair<int, int>> stack{{root, kNoParent}};
  while (!stack.empty()) {
    const auto [k, up] = stack.back();
    stack.pop_back();
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({labels[k], up});
    for (auto it = kids[k].rbegin(); it != kids[k].rend(); ++it) stack.push_back({*it, id});
  }
  return Pattern(std::move(nodes));
}

}  // namespace

bool has_one_node_cover(const DataTree& tree, const Pattern& p, const OccurrenceListSet& ol, std::size_t minsup,
                        std::size_t& computed, const std::unordered_set<Pattern, PatternHash>* only_below) {
  std::size_t shortest = 0;
  if (only_below) {
    if (only_below->empty()) return false;
    shortest = std::min_element(only_below->begin(), only_below->end(), [](const Pattern& a, const Pattern& b) {
                 return a.size() < b.size();
               })->size();
  }
  auto below = [&](Pattern q) {
    while (q.size() > shortest) {
      q = q.prefix();
      if (only_below->count(q)) return true;
    }
    return false;
  };

  const int n = static_cast<int>(p.size());
  std::vector<LabelId> labels;
  std::vector<int> parents;
  for (const auto& node : p.nodes()) {
    labels.push_back(node.label);
    parents.push_back(node.parent);
  }
  labels.push_back(0);
  parents.push_back(kNoParent);

  std::unordered_set<Pattern, PatternHash> tried;
  auto covers = [&](std::vector<int> par) {
    Pattern q = canonicalize(from_parents(labels, par));
    if (!tried.insert(q).second) return false;
    if (only_below && !below(q)) return false;
    ++computed;
    const OccurrenceListSet q_ol = compute_emb_ol(tree, q);
    if (q_ol.root_support() < minsup) return false;
    const auto images = embeds(p, q);
    return !images.empty() && l_root_given(images, q_ol) == ol.root();
  };

  for (LabelId l = 0; l < static_cast<LabelId>(tree.label_count()); ++l) {
    if (tree.inverted_list(l).empty()) continue;
    labels[n] = l;
    {
      auto par = parents;
      par[0] = n;
      par[n] = kNoParent;
      if (covers(std::move(par))) return true;
    }
    for (int a = 0; a < n; ++a) {
      const auto kids = p.children(a);
      // Adopting more than 20 children would need over a million subsets.
      const std::size_t subsets = kids.size() < 20 ? std::size_t{1} << kids.size() : std::size_t{1} << 20;
      for (std::size_t mask = 0; mask < subsets; ++mask) {
        auto par = parents;
        par[n] = a;
        for (std::size_t b = 0; b < kids.size() && b < 20; ++b)
          if (mask >> b & 1) par[kids[b]] = n;
        if (covers(std::move(par))) return true;
      }
    }
  }
  return false;
}

}  // namespace treemine
