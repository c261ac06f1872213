#include "treemine/occurrence_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace treemine {

OccurrenceListSet::OccurrenceListSet(std::vector<OccurrenceBitmap> lists) : lists_(std::move(lists)) {
  root_support_ = lists_.empty() ? 0 : lists_.front().count();
}

OccurrenceListSet OccurrenceListSet::single(const DataTree& tree, LabelId label) {
  return OccurrenceListSet({OccurrenceBitmap::full(label, tree.inverted_list(label).size())});
}

std::size_t OccurrenceListSet::memory_bytes() const noexcept {
  std::size_t n = 0;
  for (const auto& b : lists_) n += b.memory_bytes();
  return n;
}

std::vector<OccurrenceBitmap> full_candidates(const DataTree& tree, const Pattern& p) {
  std::vector<OccurrenceBitmap> out;
  out.reserve(p.size());
  for (const auto& n : p.nodes()) out.push_back(OccurrenceBitmap::full(n.label, tree.inverted_list(n.label).size()));
  return out;
}

bool sibling_filter(const DataTree& tree, const Pattern& p, const OccurrenceTuple& t) {
  const int n = static_cast<int>(p.size());
  for (int a = 1; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (p.parent(a) == p.parent(b) && tree.on_same_path(t[a], t[b])) return false;
  return true;
}

namespace {

// Backtracking over candidate node lists that have been semijoin-reduced
// bottom-up and top-down, so every remaining candidate takes part in some
// homomorphic tuple. Positions are assigned in depth-first order; each
// position only scans the candidates inside its parent image's subtree.
class TwigSearch {
 public:
  TwigSearch(const DataTree& tree, const Pattern& p, const std::vector<OccurrenceBitmap>& candidates)
      : tree_(tree), p_(p), n_(static_cast<int>(p.size())), cand_(n_), siblings_(n_), img_(n_, kNoNode) {
    if (candidates.size() != p.size()) throw std::invalid_argument("one candidate bitmap per pattern position expected");
    for (int k = 0; k < n_; ++k) {
      if (candidates[k].label() != p.label(k)) throw std::invalid_argument("candidate bitmap label mismatch");
      cand_[k] = materialize(candidates[k], tree);
      for (int s = 1; s < k; ++s)
        if (p.parent(s) == p.parent(k)) siblings_[k].push_back(s);
    }
    reduce();
  }

  bool empty() const {
    return std::any_of(cand_.begin(), cand_.end(), [](const auto& c) { return c.empty(); });
  }
  const std::vector<NodeId>& candidates(int k) const { return cand_[k]; }
  bool branching() const {
    return std::any_of(siblings_.begin(), siblings_.end(), [](const auto& s) { return !s.empty(); });
  }

  // Enumerates tuples in lexicographic order; stops when sink returns false.
  // With cut < n, only the first cut positions vary: each assignment of
  // them that completes to a full tuple is delivered once.
  template <typename Sink>
  std::size_t enumerate(bool embedded, Sink&& sink, int cut = -1) {
    embedded_ = embedded;
    delivered_ = 0;
    cut_ = cut;
    if (!empty()) extend(0, sink);
    return delivered_;
  }

 private:
  struct FirstOnly {
    bool found = false;
    bool operator()(const OccurrenceTuple&) {
      found = true;
      return false;
    }
  };

  void reduce() {
    // Bottom-up: keep parents with at least one child candidate below them.
    for (int k = n_ - 1; k >= 1; --k) {
      const auto& below = cand_[k];
      auto& above = cand_[p_.parent(k)];
      std::erase_if(above, [&](NodeId v) {
        auto it = std::upper_bound(below.begin(), below.end(), v);
        return it == below.end() || *it >= tree_.subtree_end(v);
      });
    }
    // Top-down: keep children that have a parent candidate above them.
    for (int k = 1; k < n_; ++k) {
      const auto& above = cand_[p_.parent(k)];
      auto& below = cand_[k];
      std::vector<NodeId> open;
      std::size_t a = 0;
      std::erase_if(below, [&](NodeId w) {
        while (a < above.size() && above[a] < w) {
          while (!open.empty() && tree_.subtree_end(open.back()) <= above[a]) open.pop_back();
          open.push_back(above[a++]);
        }
        while (!open.empty() && tree_.subtree_end(open.back()) <= w) open.pop_back();
        return open.empty();
      });
    }
  }

  bool fits_siblings(int k, NodeId v) const {
    if (!embedded_) return true;
    for (int s : siblings_[k])
      if (tree_.on_same_path(img_[s], v)) return false;
    return true;
  }

  template <typename Sink>
  bool emit(Sink& sink) {
    ++delivered_;
    return sink(img_);
  }

  // Returns false once the sink asked to stop.
  template <typename Sink>
  bool extend(int k, Sink& sink) {
    if (k == n_) return emit(sink);
    if (k == cut_) {
      FirstOnly first;
      cut_ = -1;
      extend(k, first);
      cut_ = k;
      return !first.found || emit(sink);
    }
    const auto& cands = cand_[k];
    NodeId lo = 0;
    NodeId hi = static_cast<NodeId>(tree_.size());
    if (k > 0) {
      const NodeId up = img_[p_.parent(k)];
      lo = up + 1;
      hi = tree_.subtree_end(up);
    }

    auto first = std::lower_bound(cands.begin(), cands.end(), lo);
    for (auto it = first; it != cands.end() && *it < hi; ++it) {
      if (!fits_siblings(k, *it)) continue;
      img_[k] = *it;
      if (!extend(k + 1, sink)) return false;
    }
    return true;
  }

  const DataTree& tree_;
  const Pattern& p_;
  int n_;
  std::vector<std::vector<NodeId>> cand_;
  std::vector<std::vector<int>> siblings_;
  std::vector<NodeId> img_;
  bool embedded_ = true;
  int cut_ = -1;
  std::size_t delivered_ = 0;
};

// Exact projections of the embedded occurrences. A pass from the leaves
// finds where each pattern subtree fits; a pass from the root keeps the
// nodes that also fit the rest of the pattern. Placing siblings only needs
// the lowest fitting nodes of each child: anything off the path of a node
// is also off the path of its descendants.
class EmbeddedLists {
 public:
  EmbeddedLists(const DataTree& tree, const Pattern& p) : tree_(tree), p_(p), n_(static_cast<int>(p.size())) {
    kids_.resize(n_);
    for (int k = 1; k < n_; ++k) kids_[p.parent(k)].push_back(k);
  }

  std::vector<std::vector<NodeId>> run(const TwigSearch& search) {
    down_.assign(n_, {});
    lowest_.assign(n_, {});
    for (int k = n_ - 1; k >= 0; --k) {
      for (NodeId v : search.candidates(k))
        if (place(kids_[k], v)) down_[k].push_back(v);
      const auto& d = down_[k];
      for (std::size_t i = 0; i < d.size(); ++i)
        if (i + 1 == d.size() || d[i + 1] >= tree_.subtree_end(d[i])) lowest_[k].push_back(d[i]);
    }
    std::vector<std::vector<NodeId>> occ(n_);
    occ[0] = down_[0];
    std::vector<int> others;
    for (int k = 1; k < n_; ++k) {
      const int b = p_.parent(k);
      const auto& d = down_[k];
      others.clear();
      for (int c : kids_[b])
        if (c != k) others.push_back(c);
      std::vector<char> accepted(d.size(), 0);
      for (NodeId u : occ[b]) {
        const std::size_t lo = std::upper_bound(d.begin(), d.end(), u) - d.begin();
        const std::size_t hi = std::lower_bound(d.begin() + lo, d.end(), tree_.subtree_end(u)) - d.begin();
        if (lo == hi || !ranges_below(others, u)) continue;
        for (std::size_t i = lo; i < hi; ++i) {
          if (accepted[i]) continue;
          chosen_.assign(1, d[i]);
          if (assign(ranges_, 0)) accepted[i] = 1;
        }
      }
      for (std::size_t i = 0; i < d.size(); ++i)
        if (accepted[i]) occ[k].push_back(d[i]);
    }
    return occ;
  }

 private:
  // Fills ranges_ with each child's lowest fitting nodes strictly below v,
  // smallest first. False if some child has none.
  bool ranges_below(const std::vector<int>& kids, NodeId v) {
    ranges_.clear();
    for (int c : kids) {
      const auto& l = lowest_[c];
      auto lo = std::upper_bound(l.begin(), l.end(), v);
      auto hi = std::lower_bound(lo, l.end(), tree_.subtree_end(v));
      if (lo == hi) return false;
      ranges_.emplace_back(l.data() + (lo - l.begin()), l.data() + (hi - l.begin()));
    }
    std::sort(ranges_.begin(), ranges_.end(),
              [](const auto& a, const auto& b) { return a.second - a.first < b.second - b.first; });
    return true;
  }

  // Whether the children can go to pairwise off-path nodes below v.
  bool place(const std::vector<int>& kids, NodeId v) {
    if (kids.empty()) return true;
    if (!ranges_below(kids, v)) return false;
    chosen_.clear();
    return assign(ranges_, 0);
  }

  bool assign(const std::vector<std::pair<const NodeId*, const NodeId*>>& ranges, std::size_t i) {
    if (i == ranges.size()) return true;
    for (const NodeId* w = ranges[i].first; w != ranges[i].second; ++w) {
      if (std::any_of(chosen_.begin(), chosen_.end(), [&](NodeId c) { return tree_.on_same_path(c, *w); }))
        continue;
      chosen_.push_back(*w);
      if (assign(ranges, i + 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const DataTree& tree_;
  const Pattern& p_;
  int n_;
  std::vector<std::vector<int>> kids_;
  std::vector<std::vector<NodeId>> down_, lowest_;
  std::vector<NodeId> chosen_;
  std::vector<std::pair<const NodeId*, const NodeId*>> ranges_;
};

}  // namespace

std::size_t twig_join_homomorphic(const DataTree& tree, const Pattern& p,
                                  const std::vector<OccurrenceBitmap>& candidates, const TupleSink& sink) {
  TwigSearch search(tree, p, candidates);
  return search.enumerate(false, [&](const OccurrenceTuple& t) { return sink(t); });
}

OccurrenceListSet compute_emb_ol(const DataTree& tree, const Pattern& q,
                                 const std::vector<OccurrenceBitmap>& candidates) {
  TwigSearch search(tree, q, candidates);
  const int n = static_cast<int>(q.size());
  std::vector<OccurrenceBitmap> lists;
  lists.reserve(n);
  for (int k = 0; k < n; ++k) lists.emplace_back(q.label(k), tree.inverted_list(q.label(k)).size());
  if (search.empty()) return OccurrenceListSet(std::move(lists));

  if (!search.branching()) {
    // Without siblings every homomorphism is an embedding, and the reduced
    // candidates are exactly the projections.
    for (int k = 0; k < n; ++k)
      for (NodeId v : search.candidates(k)) lists[k].set(tree.list_position(v));
    return OccurrenceListSet(std::move(lists));
  }

  const auto occ = EmbeddedLists(tree, q).run(search);
  for (int k = 0; k < n; ++k)
    for (NodeId v : occ[k]) lists[k].set(tree.list_position(v));
  return OccurrenceListSet(std::move(lists));
}

OccurrenceListSet compute_emb_ol(const DataTree& tree, const Pattern& q, const OccurrenceListSet& left,
                                 const OccurrenceListSet& right) {
  const std::size_t n = q.size();
  if (n < 2 || left.size() != n - 1 || right.size() != n - 1)
    throw std::invalid_argument("occurrence lists do not belong to the parents of this join");
  std::vector<OccurrenceBitmap> cand;
  cand.reserve(n);
  // Shared prefix positions must be images for both parents.
  for (std::size_t k = 0; k + 2 < n; ++k) cand.push_back(bitmap_and(left[k], right[k]));
  cand.push_back(left[n - 2]);
  cand.push_back(right[n - 2]);
  return compute_emb_ol(tree, q, cand);
}

std::size_t occurrence_tuples(const DataTree& tree, const Pattern& q, const OccurrenceListSet& ol,
                              const TupleSink& sink) {
  TwigSearch search(tree, q, ol.lists());
  return search.enumerate(true, [&](const OccurrenceTuple& t) { return sink(t); });
}

std::size_t occurrence_prefixes(const DataTree& tree, const Pattern& q, const OccurrenceListSet& ol, std::size_t m,
                               const TupleSink& sink) {
  if (m == 0 || m > q.size()) throw std::invalid_argument("prefix length out of range");
  TwigSearch search(tree, q, ol.lists());
  return search.enumerate(true, [&](const OccurrenceTuple& t) { return sink(t); }, static_cast<int>(m));
}

std::vector<OccurrenceTuple> collect_occurrences(const DataTree& tree, const Pattern& q,
                                                 const OccurrenceListSet& ol) {
  std::vector<OccurrenceTuple> out;
  occurrence_tuples(tree, q, ol, [&](const OccurrenceTuple& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

}  // namespace treemine
