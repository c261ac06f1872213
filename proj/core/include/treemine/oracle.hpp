#pragma once

#include <cstddef>
#include <vector>

#include "treemine/pattern.hpp"
#include "treemine/tree_store.hpp"

// Brute-force ground truth. Deliberately shares no occurrence code with the
// engine: ancestry comes from parent walks, embeddings from plain
// backtracking over all nodes, canonical forms from sorted encodings.
namespace treemine::oracle {

using NodeList = std::vector<NodeId>;

struct FrequentPattern {
  Pattern pattern;               // canonical
  std::vector<NodeList> lists;   // per position, sorted
  std::size_t support = 0;
};

struct OracleResult {
  std::vector<FrequentPattern> frequent;  // size ascending, includes 1-node patterns
  std::vector<std::size_t> closed;        // indices into frequent, >= 2 nodes
  std::vector<std::size_t> maximal;
};

class NaiveTree {
 public:
  explicit NaiveTree(const DataTree& tree);
  const DataTree& tree() const { return tree_; }
  bool is_ancestor(NodeId a, NodeId b) const { return anc_[static_cast<std::size_t>(a) * n_ + b]; }
  const std::vector<NodeId>& nodes_with(LabelId l) const { return by_label_[l]; }

 private:
  const DataTree& tree_;
  std::size_t n_;
  std::vector<char> anc_;
  std::vector<std::vector<NodeId>> by_label_;
};

// Independent canonical form: children ordered by their depth-first label
// sequences with the backtrack symbol above every label.
Pattern canonical_form(const Pattern& p);

std::vector<std::vector<NodeId>> naive_embeddings(const NaiveTree& t, const Pattern& p);
std::vector<std::vector<NodeId>> naive_homomorphisms(const NaiveTree& t, const Pattern& p);
std::vector<NodeList> naive_occurrence_lists(const NaiveTree& t, const Pattern& p);
// Number of data nodes that root some embedding of p.
std::size_t naive_support(const NaiveTree& t, const Pattern& p);

// Root images of p in q over all injective maps that respect labels,
// ancestry and the sibling constraint.
std::vector<int> naive_root_images(const Pattern& p, const Pattern& q);

// Every canonical pattern over frequent labels with at most max_size nodes
// and root support >= minsup.
std::vector<FrequentPattern> enumerate_frequent_naive(const NaiveTree& t, std::size_t minsup, std::size_t max_size);

// Pairwise closed/maximal filtering over the given frequent set.
void filter_closed_naive(OracleResult& result);

OracleResult run_oracle(const DataTree& tree, std::size_t minsup, std::size_t max_size);

// Closedness without any size horizon: a non-closed pattern always has a
// frequent cover with exactly one more node, so sweeping all one-node
// extensions (new leaf, new inner node adopting some children, new root)
// decides it.
bool is_closed_unbounded(const NaiveTree& t, std::size_t minsup, const Pattern& p);

// All patterns obtained by adding one node with a label from labels.
std::vector<Pattern> one_node_extensions(const Pattern& p, const std::vector<LabelId>& labels);

}  // namespace treemine::oracle
