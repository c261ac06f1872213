#include <algorithm>
#include <functional>
#include <stdexcept>

#include "treemine/miner.hpp"

namespace treemine {

std::optional<std::set<OccurrenceTuple>> project_occurrences(const DataTree& tree, const Pattern& p,
                                                             const OccurrenceListSet& ol,
                                                             const std::vector<int>& positions, std::size_t budget) {
  std::set<OccurrenceTuple> out;
  std::size_t seen = 0;
  bool exhausted = false;
  OccurrenceTuple key(positions.size());
  auto take = [&](const OccurrenceTuple& t) {
    if (++seen > budget) {
      exhausted = true;
      return false;
    }
    for (std::size_t i = 0; i < positions.size(); ++i) key[i] = t[positions[i]];
    out.insert(key);
    return true;
  };
  // Projections onto a leading block of positions need no full enumeration.
  bool leading = !positions.empty();
  for (std::size_t i = 0; i < positions.size() && leading; ++i) leading = positions[i] == static_cast<int>(i);
  if (leading) occurrence_prefixes(tree, p, ol, positions.size(), take);
  else occurrence_tuples(tree, p, ol, take);
  if (exhausted) return std::nullopt;
  return out;
}

std::optional<bool> occurrence_equivalent(const DataTree& tree, const Pattern& p, const OccurrenceListSet& ol_p,
                                          const Pattern& q, const OccurrenceListSet& ol_q, int inserted,
                                          std::size_t budget) {
  const int n = static_cast<int>(p.size());
  if (static_cast<int>(q.size()) != n + 1 || inserted <= 0 || inserted > n)
    throw std::invalid_argument("q must be p plus one non-root node");
  auto to_q = [&](int k) { return k < inserted ? k : k + 1; };
  auto to_p = [&](int k) { return k < inserted ? k : k - 1; };

  if (ol_p.root_support() == 0) return true;
  // Restricting an occurrence of q gives one of p, so equivalence forces
  // equal lists on every shared position.
  for (int k = 0; k < n; ++k)
    if (!(ol_p[k] == ol_q[to_q(k)])) return false;

  // Whether the new node u can be placed depends only on the images of its
  // parent and of that parent's other children. Given the parent's image a,
  // those children may take any pairwise off-path nodes of their lists
  // below a: the rest of an occurrence is independent of that choice.
  const int up = q.parent(inserted);
  std::vector<int> below, beside;
  for (int k = 0; k <= n; ++k) {
    if (k == inserted) continue;
    if (q.parent(k) == inserted) below.push_back(to_p(k));
    else if (q.parent(k) == up) beside.push_back(to_p(k));
  }
  std::vector<int> kids(below);
  kids.insert(kids.end(), beside.begin(), beside.end());
  std::vector<std::vector<NodeId>> lists;
  for (int k : kids) lists.push_back(materialize(ol_p[k], tree));
  const std::vector<NodeId> pool = materialize(ol_q[inserted], tree);

  std::vector<NodeId> img(kids.size());
  std::size_t seen = 0;
  auto placeable = [&](NodeId a) {
    auto it = std::upper_bound(pool.begin(), pool.end(), a);
    for (; it != pool.end() && *it < tree.subtree_end(a); ++it) {
      const NodeId w = *it;
      bool ok = true;
      for (std::size_t i = 0; i < kids.size() && ok; ++i)
        ok = i < below.size() ? tree.is_ancestor(w, img[i]) : !tree.on_same_path(w, img[i]);
      if (ok) return true;
    }
    return false;
  };
  // 1: every assignment extends, 0: one does not, -1: out of budget.
  std::function<int(NodeId, std::size_t)> assign = [&](NodeId a, std::size_t i) -> int {
    if (i == kids.size()) {
      if (++seen > budget) return -1;
      return placeable(a) ? 1 : 0;
    }
    const auto& l = lists[i];
    auto it = std::upper_bound(l.begin(), l.end(), a);
    for (; it != l.end() && *it < tree.subtree_end(a); ++it) {
      bool free = true;
      for (std::size_t j = 0; j < i && free; ++j) free = !tree.on_same_path(img[j], *it);
      if (!free) continue;
      img[i] = *it;
      const int r = assign(a, i + 1);
      if (r != 1) return r;
    }
    return 1;
  };
  for (NodeId a : materialize(ol_p[to_p(up)], tree)) {
    const int r = assign(a, 0);
    if (r < 0) return std::nullopt;
    if (r == 0) return false;
  }
  return true;
}

}  // namespace treemine
