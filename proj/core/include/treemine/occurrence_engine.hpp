#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "treemine/occlist.hpp"
#include "treemine/pattern.hpp"
#include "treemine/tree_store.hpp"

namespace treemine {

// One data node per pattern position.
using OccurrenceTuple = std::vector<NodeId>;

// Return false to stop the enumeration early.
using TupleSink = std::function<bool(const OccurrenceTuple&)>;

// OL(P): per pattern position, the projection of the embedded occurrence
// relation, as a bitmap over that position's label list.
class OccurrenceListSet {
 public:
  OccurrenceListSet() = default;
  explicit OccurrenceListSet(std::vector<OccurrenceBitmap> lists);

  static OccurrenceListSet single(const DataTree& tree, LabelId label);

  std::size_t size() const noexcept { return lists_.size(); }
  const OccurrenceBitmap& operator[](std::size_t k) const { return lists_[k]; }
  const OccurrenceBitmap& root() const { return lists_.front(); }
  const std::vector<OccurrenceBitmap>& lists() const noexcept { return lists_; }
  std::size_t root_support() const noexcept { return root_support_; }
  std::size_t memory_bytes() const noexcept;

  bool operator==(const OccurrenceListSet& other) const { return lists_ == other.lists_; }

 private:
  std::vector<OccurrenceBitmap> lists_;
  std::size_t root_support_ = 0;
};

inline std::size_t root_support(const OccurrenceListSet& ol) { return ol.root_support(); }

// Full inverted lists for every position.
std::vector<OccurrenceBitmap> full_candidates(const DataTree& tree, const Pattern& p);

// Homomorphic tuples over the candidates, lexicographic by image begin.
// Returns the number of tuples delivered.
std::size_t twig_join_homomorphic(const DataTree& tree, const Pattern& p,
                                  const std::vector<OccurrenceBitmap>& candidates, const TupleSink& sink);

// True iff no two children of any pattern node have images on one path.
bool sibling_filter(const DataTree& tree, const Pattern& p, const OccurrenceTuple& t);

// Embedded occurrence lists restricted to the given candidates.
OccurrenceListSet compute_emb_ol(const DataTree& tree, const Pattern& q,
                                 const std::vector<OccurrenceBitmap>& candidates);

// q is the join outcome of the elements owning left and right.
OccurrenceListSet compute_emb_ol(const DataTree& tree, const Pattern& q, const OccurrenceListSet& left,
                                 const OccurrenceListSet& right);

inline OccurrenceListSet compute_emb_ol(const DataTree& tree, const Pattern& q) {
  return compute_emb_ol(tree, q, full_candidates(tree, q));
}

// Embedded tuples of q, lexicographic by image begin. Returns the number of
// tuples delivered.
std::size_t occurrence_tuples(const DataTree& tree, const Pattern& q, const OccurrenceListSet& ol,
                              const TupleSink& sink);

// Distinct restrictions of the embedded tuples of q to positions [0, m),
// in the same order. Only the first m entries of each delivered tuple are
// meaningful.
std::size_t occurrence_prefixes(const DataTree& tree, const Pattern& q, const OccurrenceListSet& ol, std::size_t m,
                               const TupleSink& sink);

std::vector<OccurrenceTuple> collect_occurrences(const DataTree& tree, const Pattern& q,
                                                 const OccurrenceListSet& ol);

}  // namespace treemine
