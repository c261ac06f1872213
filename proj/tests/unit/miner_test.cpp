#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "test_support.hpp"
#include "treemine/miner.hpp"
#include "treemine/oracle.hpp"

namespace treemine {
namespace {

using testing::Keyed;

constexpr Algorithm kAlgorithms[] = {Algorithm::base, Algorithm::eager, Algorithm::prune};

TEST(Miner, RunningExample) {
  const DataTree t = load_forest("A B C -1 -1 B C -1 D -1 -1\n");
  const Keyed want = {{"B C -1", 2}};
  for (Algorithm a : kAlgorithms) {
    for (auto cap : {std::optional<std::size_t>{}, std::optional<std::size_t>{5}}) {
      EXPECT_EQ(testing::mined(t, a, Target::closed, 2, cap), want) << to_string(a);
      EXPECT_EQ(testing::mined(t, a, Target::maximal, 2, cap), want) << to_string(a);
    }
  }
}

TEST(Miner, ParsersAndNames) {
  EXPECT_EQ(parse_algorithm("eager"), Algorithm::eager);
  EXPECT_FALSE(parse_algorithm("fast"));
  EXPECT_EQ(parse_target("maximal"), Target::maximal);
  EXPECT_STREQ(to_string(Algorithm::prune), "prune");
  EXPECT_STREQ(to_string(Target::frequent), "frequent");
}

TEST(Miner, FrequentSetMatchesOracle) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 40; ++round) {
    const DataTree t = testing::random_tree(rng, 10 + testing::uniform(rng, 0, 25), 3);
    const std::size_t minsup = 2 + testing::uniform(rng, 0, 1);
    MiningConfig cfg;
    cfg.minsup = minsup;
    cfg.max_size = 5;
    Keyed got;
    for (const auto& p : mine_frequent(t, cfg).patterns) {
      ASSERT_TRUE(canonical_check(p.pattern));
      got[encode(p.pattern, t.label_table())] = p.support();
    }
    Keyed want;
    const oracle::NaiveTree nt(t);
    for (const auto& f : oracle::enumerate_frequent_naive(nt, minsup, 5))
      if (f.pattern.size() >= 2) want[encode(f.pattern, t.label_table())] = f.support;
    ASSERT_EQ(got, want) << serialize(t);
  }
}

TEST(Miner, ClosedAndMaximalMatchOracle) {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 60; ++round) {
    const DataTree t = testing::random_tree(rng, 10 + testing::uniform(rng, 0, 30), 3 + testing::uniform(rng, 0, 1));
    const std::size_t minsup = 2 + testing::uniform(rng, 0, 1);
    const std::size_t cap = 4 + testing::uniform(rng, 0, 1);
    const auto want = testing::oracle_sets(t, minsup, cap);
    for (Algorithm a : kAlgorithms) {
      ASSERT_EQ(testing::mined(t, a, Target::closed, minsup, cap), want.closed) << to_string(a) << '\n' << serialize(t);
      ASSERT_EQ(testing::mined(t, a, Target::maximal, minsup, cap), want.maximal) << to_string(a) << '\n' << serialize(t);
    }
  }
}

// Without a size cap pruning is live; all three must still agree and every
// reported pattern must be closed with no horizon.
TEST(Miner, UnboundedAlgorithmsAgree) {
  std::mt19937_64 rng(43);
  std::size_t pruned = 0;
  for (int round = 0; round < 200; ++round) {
    const DataTree t = testing::random_tree(rng, 8 + testing::uniform(rng, 0, 8), 3);
    const std::size_t minsup = 2 + testing::uniform(rng, 0, 1);
    MiningConfig cfg;
    cfg.minsup = minsup;
    cfg.algorithm = Algorithm::base;
    const Keyed base = testing::keyed(mine(t, cfg), t.label_table());
    cfg.algorithm = Algorithm::eager;
    ASSERT_EQ(testing::keyed(mine(t, cfg), t.label_table()), base) << serialize(t);
    cfg.algorithm = Algorithm::prune;
    const auto r = mine(t, cfg);
    pruned += r.stats.pruned_subtrees;
    ASSERT_EQ(testing::keyed(r, t.label_table()), base) << serialize(t);
    const oracle::NaiveTree nt(t);
    for (const auto& p : r.patterns) ASSERT_TRUE(oracle::is_closed_unbounded(nt, minsup, p.pattern));
  }
  EXPECT_GT(pruned, 0u);
}

// A same-position cousin surrogate whose subtree holds a closed pattern: its
// extra C siblings under A use up the B images the surrogate node needs.
TEST(Miner, SamePositionSurrogateKeepsClosedPattern) {
  const DataTree t = load_forest("A A C C -1 B C -1 -1 -1 C B -1 B -1 -1 C B B C -1 -1 -1 -1 B -1 -1 B -1\n");
  const std::string lost = "A B -1 C B B C -1 -1 -1 -1 C B C -1 -1 C -1 -1 C B -1 B -1 -1";
  MiningConfig cfg;
  cfg.algorithm = Algorithm::base;
  const Keyed base = testing::keyed(mine(t, cfg), t.label_table());
  ASSERT_TRUE(base.count(lost));
  cfg.algorithm = Algorithm::prune;
  EXPECT_EQ(testing::keyed(mine(t, cfg), t.label_table()), base);
  cfg.aggressive_prune = true;
  EXPECT_FALSE(testing::keyed(mine(t, cfg), t.label_table()).count(lost));
}

TEST(Miner, ClassElementsAreAntimonotone) {
  std::mt19937_64 rng(44);
  for (int round = 0; round < 20; ++round) {
    const DataTree t = testing::random_tree(rng, 20 + testing::uniform(rng, 0, 20), 3);
    MiningConfig cfg;
    cfg.minsup = 2;
    cfg.max_size = 5;
    std::size_t seen = 0;
    MiningHooks hooks;
    hooks.on_class_element = [&](const EquivalenceClass& cls, const ClassElement& el) {
      ++seen;
      EXPECT_EQ(el.pattern.prefix(), cls.prefix);
      EXPECT_LE(el.support(), cls.prefix_support);
      EXPECT_GE(el.support(), cfg.minsup);
    };
    for (Algorithm a : kAlgorithms) {
      cfg.algorithm = a;
      mine(t, cfg, &hooks);
    }
    EXPECT_GT(seen, 0u);
  }
}

TEST(Miner, StatsAreConsistent) {
  std::mt19937_64 rng(45);
  const DataTree t = testing::random_tree(rng, 40, 3);
  MiningConfig cfg;
  cfg.max_size = 5;
  cfg.target = Target::maximal;
  const auto r = mine(t, cfg);
  EXPECT_EQ(r.stats.maximal, r.patterns.size());
  EXPECT_LE(r.stats.maximal, r.stats.closed);
  EXPECT_LE(r.stats.closed, r.stats.frequent);
  EXPECT_LE(r.stats.frequent, r.stats.computed);
  EXPECT_GT(r.stats.peak_list_bytes, 0u);
  auto sorted = r.patterns;
  sort_patterns(sorted, t.label_table());
  for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i].pattern, r.patterns[i].pattern);
}

// q joins P_x and P_y over a shared prefix of n nodes: q's position n is
// P_x's leaf and n + 1 is P_y's. P_y is occurrence equivalent to q iff every
// embedded tuple of P_y is the restriction of one of q.
TEST(Miner, OccurrenceEquivalenceMatchesTuples) {
  std::mt19937_64 rng(46);
  int equivalent = 0, total = 0;
  for (int round = 0; round < 1500; ++round) {
    const DataTree t = testing::random_tree(rng, 8 + testing::uniform(rng, 0, 30), 2 + testing::uniform(rng, 0, 1));
    const oracle::NaiveTree nt(t);
    const Pattern base = testing::random_pattern(rng, 1 + testing::uniform(rng, 0, 2), t.label_count());
    const auto path = base.rightmost_path();
    const int i = path[testing::uniform(rng, 0, path.size() - 1)];
    const int j = path[testing::uniform(rng, 0, path.size() - 1)];
    auto label = [&] { return static_cast<LabelId>(testing::uniform(rng, 0, t.label_count() - 1)); };
    const Pattern px = base.extended(std::max(i, j), label());
    const Pattern py = base.extended(std::min(i, j), label());
    const auto q = testing::uniform(rng, 0, 1) ? child_join(px, py) : cousin_join(px, py);
    if (!q) continue;
    const int n = static_cast<int>(base.size());
    const auto py_ol = compute_emb_ol(t, py), q_ol = compute_emb_ol(t, *q);

    std::set<OccurrenceTuple> restricted;
    for (const auto& x : oracle::naive_embeddings(nt, *q)) {
      OccurrenceTuple r(x.begin(), x.begin() + n);
      r.push_back(x[n + 1]);
      restricted.insert(r);
    }
    bool want = true;
    for (const auto& x : oracle::naive_embeddings(nt, py)) want = want && restricted.count(x) > 0;
    const auto got = occurrence_equivalent(t, py, py_ol, *q, q_ol, n, 1'000'000);
    ASSERT_TRUE(got.has_value());
    ASSERT_EQ(*got, want) << serialize(t) << encode(py, t.label_table()) << " / " << encode(*q, t.label_table());
    equivalent += want;
    ++total;

    std::vector<int> positions(n);
    for (int k = 0; k < n; ++k) positions[k] = k;
    std::set<OccurrenceTuple> proj;
    for (const auto& x : oracle::naive_embeddings(nt, py)) proj.insert(OccurrenceTuple(x.begin(), x.begin() + n));
    const auto got_proj = project_occurrences(t, py, py_ol, positions, 1'000'000);
    ASSERT_TRUE(got_proj.has_value());
    ASSERT_EQ(*got_proj, proj);
  }
  EXPECT_GT(equivalent, 0);
  EXPECT_LT(equivalent, total);
}

TEST(Miner, ProjectionBudgetRunsOut) {
  const DataTree t = load_forest("A B -1 B -1 B -1 B -1\n");
  const Pattern p = decode("A B -1 B -1", t.label_table());
  EXPECT_FALSE(project_occurrences(t, p, compute_emb_ol(t, p), {0, 1, 2}, 3).has_value());
  EXPECT_TRUE(project_occurrences(t, p, compute_emb_ol(t, p), {0, 1, 2}, 100).has_value());
}

}  // namespace
}  // namespace treemine
