#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_support.hpp"
#include "treemine/occurrence_engine.hpp"
#include "treemine/oracle.hpp"

namespace treemine {
namespace {

std::set<OccurrenceTuple> as_set(const std::vector<std::vector<NodeId>>& v) { return {v.begin(), v.end()}; }

TEST(OccurrenceEngine, SiblingImagesMustBeOffPath) {
  const DataTree t = load_forest("A B C -1 -1 B C -1 D -1 -1\n");
  const LabelTable& lt = t.label_table();
  // B//C and A with two B children: only one pair of B images is off-path.
  const Pattern abb = decode("A B -1 B -1", lt);
  const auto ol = compute_emb_ol(t, abb);
  EXPECT_EQ(ol.root_support(), 1u);
  EXPECT_EQ(collect_occurrences(t, abb, ol), (std::vector<OccurrenceTuple>{{0, 1, 3}, {0, 3, 1}}));
  const Pattern bcc = decode("B C -1 C -1", lt);
  EXPECT_EQ(compute_emb_ol(t, bcc).root_support(), 0u);
  const Pattern bc = decode("B C -1", lt);
  EXPECT_EQ(compute_emb_ol(t, bc).root_support(), 2u);
}

TEST(OccurrenceEngine, HomomorphismsThenFilterGiveEmbeddings) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 300; ++round) {
    const DataTree t = testing::random_tree(rng, 5 + testing::uniform(rng, 0, 30), 3);
    const oracle::NaiveTree nt(t);
    const Pattern p = testing::random_pattern(rng, 1 + testing::uniform(rng, 0, 4), t.label_count());
    std::set<OccurrenceTuple> homs, embs;
    twig_join_homomorphic(t, p, full_candidates(t, p), [&](const OccurrenceTuple& x) {
      homs.insert(x);
      if (sibling_filter(t, p, x)) embs.insert(x);
      return true;
    });
    ASSERT_EQ(homs, as_set(oracle::naive_homomorphisms(nt, p)));
    ASSERT_EQ(embs, as_set(oracle::naive_embeddings(nt, p)));
  }
}

TEST(OccurrenceEngine, ListsAndTuplesMatchBacktracking) {
  std::mt19937_64 rng(22);
  for (int round = 0; round < 400; ++round) {
    const DataTree t = testing::random_tree(rng, 5 + testing::uniform(rng, 0, 40), 2 + testing::uniform(rng, 0, 2));
    const oracle::NaiveTree nt(t);
    const Pattern p = testing::random_pattern(rng, 1 + testing::uniform(rng, 0, 5), t.label_count());
    const auto ol = compute_emb_ol(t, p);
    const auto want = oracle::naive_occurrence_lists(nt, p);
    ASSERT_EQ(ol.size(), p.size());
    for (std::size_t k = 0; k < p.size(); ++k) ASSERT_EQ(materialize(ol[k], t), want[k]) << "position " << k;
    ASSERT_EQ(ol.root_support(), want[0].size());

    const auto tuples = collect_occurrences(t, p, ol);
    ASSERT_TRUE(std::is_sorted(tuples.begin(), tuples.end()));
    ASSERT_EQ(as_set(tuples), as_set(oracle::naive_embeddings(nt, p)));

    const std::size_t m = 1 + testing::uniform(rng, 0, p.size() - 1);
    std::set<OccurrenceTuple> want_prefix, got_prefix;
    for (const auto& x : tuples) want_prefix.insert(OccurrenceTuple(x.begin(), x.begin() + m));
    occurrence_prefixes(t, p, ol, m, [&](const OccurrenceTuple& x) {
      EXPECT_TRUE(got_prefix.insert(OccurrenceTuple(x.begin(), x.begin() + m)).second);
      return true;
    });
    ASSERT_EQ(got_prefix, want_prefix);
  }
}

// Lists from a join equal lists computed from scratch.
TEST(OccurrenceEngine, JoinedListsMatchDirect) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 400; ++round) {
    const DataTree t = testing::random_tree(rng, 10 + testing::uniform(rng, 0, 40), 3);
    const Pattern base = testing::random_pattern(rng, 1 + testing::uniform(rng, 0, 3), t.label_count());
    const auto path = base.rightmost_path();
    const int i = path[testing::uniform(rng, 0, path.size() - 1)];
    const int j = path[testing::uniform(rng, 0, path.size() - 1)];
    auto label = [&] { return static_cast<LabelId>(testing::uniform(rng, 0, t.label_count() - 1)); };
    const Pattern left = base.extended(std::max(i, j), label());
    const Pattern right = base.extended(std::min(i, j), label());
    const auto lol = compute_emb_ol(t, left), rol = compute_emb_ol(t, right);
    for (auto q : {child_join(left, right), cousin_join(left, right)}) {
      if (!q) continue;
      ASSERT_EQ(compute_emb_ol(t, *q, lol, rol), compute_emb_ol(t, *q));
    }
  }
}

TEST(OccurrenceEngine, EarlyStop) {
  const DataTree t = load_forest("A B -1 B -1 B -1\n");
  const Pattern p = decode("A B -1", t.label_table());
  int seen = 0;
  const auto n = occurrence_tuples(t, p, compute_emb_ol(t, p), [&](const OccurrenceTuple&) { return ++seen < 2; });
  EXPECT_EQ(seen, 2);
  EXPECT_EQ(n, 2u);
}

}  // namespace
}  // namespace treemine
