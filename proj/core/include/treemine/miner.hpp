#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "treemine/occurrence_engine.hpp"
#include "treemine/pattern.hpp"
#include "treemine/tree_store.hpp"

namespace treemine {

enum class Algorithm { base, eager, prune };
enum class Target { frequent, closed, maximal };

std::optional<Algorithm> parse_algorithm(std::string_view s);
std::optional<Target> parse_target(std::string_view s);
const char* to_string(Algorithm a);
const char* to_string(Target t);

struct MiningConfig {
  std::size_t minsup = 2;
  // With a cap, closedness and maximality are judged among the frequent
  // patterns that respect the cap.
  std::optional<std::size_t> max_size;
  Algorithm algorithm = Algorithm::prune;
  Target target = Target::closed;
  // Upper bound on occurrence tuples walked by one surrogate test; a test
  // that runs out of budget counts as failed.
  std::size_t tuple_budget = 500'000;
  // Budget for the projections behind the cheap candidate filters; a filter
  // that runs out is skipped and leaves the decision to verification.
  std::size_t filter_budget = 10'000;
  // Also cut subtrees below child surrogates and below cousin surrogates at
  // the same position. Those cuts can drop closed patterns whose extra
  // siblings use up the images the surrogate node needs, so they are off
  // unless asked for.
  bool aggressive_prune = false;
};

struct ClassElement {
  Pattern pattern;
  OccurrenceListSet ol;
  bool canonical = false;
  bool locally_closed = true;
  std::vector<std::size_t> child_surrogate_candidates;   // indices of earlier elements
  std::vector<std::size_t> cousin_surrogate_candidates;
  bool confirmed_cousin_surrogate = false;

  int attach() const { return pattern.attach(); }
  LabelId label() const { return pattern.label(pattern.rml()); }
  std::size_t support() const { return ol.root_support(); }
};

struct EquivalenceClass {
  Pattern prefix;
  std::size_t prefix_support = 0;
  std::vector<ClassElement> elements;  // position descending, label ascending
};

struct MinedPattern {
  Pattern pattern;
  OccurrenceListSet ol;
  bool is_max = true;

  std::size_t support() const { return ol.root_support(); }
};

// The evolving set of closed candidates.
//
// Covering is not transitive, so entries alone are not enough evidence: a
// pattern may be covered only by a pattern that was never an entry or has
// been evicted. Every frequent pattern is therefore remembered by its label
// multiset, and since a non-closed pattern always has a frequent cover with
// one more node, only multisets differing by one label need comparing.
class ClosedSet {
 public:
  // Inserts p unless some entry or earlier pattern covers it; evicts entries
  // p covers and clears maximality flags in both directions. Returns true if
  // inserted.
  bool check_closed_max_subpattern(const Pattern& p, const OccurrenceListSet& ol, bool is_max = true);

  // Records a frequent pattern known not to be closed.
  void observe(const Pattern& p, const OccurrenceListSet& ol);

  const std::vector<MinedPattern>& entries() const noexcept { return entries_; }
  std::vector<MinedPattern> take() { return std::move(entries_); }
  std::size_t embedding_tests() const noexcept { return embedding_tests_; }

 private:
  using Multiset = std::vector<LabelId>;

  // 0: no embedding, 1: embeds, 2: embeds and covers.
  int relation(const Pattern& small, const OccurrenceListSet& small_ol, const Pattern& big,
               const OccurrenceListSet& big_ol);
  void evict_covered_by(const Pattern& p, const OccurrenceListSet& ol, const Multiset& key);
  void remember(const Pattern& p, const OccurrenceListSet& ol, Multiset key);

  std::vector<MinedPattern> entries_;
  std::vector<Multiset> entry_keys_;
  std::map<Multiset, std::vector<MinedPattern>> seen_;
  std::set<LabelId> seen_labels_;
  std::size_t embedding_tests_ = 0;
};

struct MiningStats {
  std::size_t computed = 0;         // join outcomes whose lists were computed
  std::size_t frequent = 0;         // frequent canonical patterns with >= 2 nodes
  std::size_t locally_closed = 0;
  std::size_t locally_maximal = 0;
  std::size_t closed = 0;
  std::size_t maximal = 0;
  std::size_t embedding_tests = 0;  // pattern-to-pattern checks against the closed set
  std::size_t surrogate_candidates = 0;
  std::size_t candidates_disqualified = 0;
  std::size_t surrogates_confirmed = 0;
  std::size_t pruned_subtrees = 0;
  std::size_t cover_checks = 0;     // one-node extensions computed to confirm closedness
  std::size_t peak_list_bytes = 0;  // occurrence lists held at once
  double seconds = 0;
};

enum class SurrogateKind { child, cousin };

struct SurrogateEvent {
  Pattern surrogate;  // P_x
  Pattern target;     // P_y, non-closed together with its search subtree
  Pattern witness;    // the expansion of P_x by P_y occurrence-equivalent to P_y
  SurrogateKind kind;
  bool by_position_shortcut;  // confirmed without checking every follower
};

struct MiningHooks {
  std::function<void(const EquivalenceClass&, const ClassElement&)> on_class_element;
  std::function<void(const SurrogateEvent&)> on_surrogate;
};

struct MiningResult {
  std::vector<MinedPattern> patterns;  // sorted by size, then encoding
  MiningStats stats;
};

// Frequent labels and the classes of frequent two-node patterns.
struct SeedClasses {
  std::vector<LabelId> f1;
  std::vector<EquivalenceClass> classes;
  std::size_t computed = 0;
};
SeedClasses mine_f1_f2(const DataTree& tree, const MiningConfig& cfg);

MiningResult mine_base(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks = nullptr);
MiningResult mine_eager(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks = nullptr);
MiningResult mine_prune(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks = nullptr);

// Every frequent canonical pattern with >= 2 nodes; is_max is meaningless.
MiningResult mine_frequent(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks = nullptr);

// Dispatches on cfg.algorithm and cfg.target; maximal keeps only is_max entries.
MiningResult mine(const DataTree& tree, const MiningConfig& cfg, const MiningHooks* hooks = nullptr);

void sort_patterns(std::vector<MinedPattern>& patterns, const LabelTable& labels);

// q is p plus one node at position inserted; p's position k corresponds to
// k (k < inserted) or k + 1 in q. True iff every embedded occurrence of p
// extends to one of q. nullopt when the tuple budget ran out.
std::optional<bool> occurrence_equivalent(const DataTree& tree, const Pattern& p, const OccurrenceListSet& ol_p,
                                          const Pattern& q, const OccurrenceListSet& ol_q, int inserted,
                                          std::size_t budget);

// Whether some one-node extension of p (new leaf, new inner node adopting
// some children, new root) has root support >= minsup and covers p. Adds the
// number of extensions whose lists were computed to computed. With
// only_below set, extensions are skipped unless one of their proper
// canonical prefixes is in it.
bool has_one_node_cover(const DataTree& tree, const Pattern& p, const OccurrenceListSet& ol, std::size_t minsup,
                        std::size_t& computed,
                        const std::unordered_set<Pattern, PatternHash>* only_below = nullptr);

// Distinct projections of OC(p) onto the given positions. nullopt when the
// tuple budget ran out.
std::optional<std::set<OccurrenceTuple>> project_occurrences(const DataTree& tree, const Pattern& p,
                                                             const OccurrenceListSet& ol,
                                                             const std::vector<int>& positions, std::size_t budget);

}  // namespace treemine
