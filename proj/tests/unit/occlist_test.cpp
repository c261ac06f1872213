#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <random>
#include <set>

#include "treemine/occlist.hpp"

namespace treemine {
namespace {

std::set<std::size_t> random_set(std::mt19937_64& rng, std::size_t size, double density) {
  std::bernoulli_distribution pick(density);
  std::set<std::size_t> s;
  for (std::size_t i = 0; i < size; ++i)
    if (pick(rng)) s.insert(i);
  return s;
}

OccurrenceBitmap bitmap_of(const std::set<std::size_t>& s, std::size_t size) {
  OccurrenceBitmap b(0, size);
  for (auto i : s) b.set(i);
  return b;
}

TEST(Bitmap, Basics) {
  OccurrenceBitmap b(3, 130);
  EXPECT_TRUE(b.none());
  b.set(0);
  b.set(64);
  b.set(129);
  EXPECT_EQ(b.count(), 3u);
  EXPECT_EQ(b.positions(), (std::vector<std::size_t>{0, 64, 129}));
  b.reset(64);
  EXPECT_FALSE(b.test(64));
  EXPECT_EQ(b.memory_bytes(), 3 * sizeof(std::uint64_t));
  EXPECT_EQ(OccurrenceBitmap::full(3, 130).count(), 130u);
  b.clear();
  EXPECT_FALSE(b.any());
}

TEST(Bitmap, MismatchedOperandsThrow) {
  OccurrenceBitmap a(1, 10), b(2, 10), c(1, 11);
  EXPECT_THROW(a &= b, std::invalid_argument);
  EXPECT_THROW(a |= c, std::invalid_argument);
}

TEST(Bitmap, MaterializeFollowsListOrder) {
  const DataTree t = load_forest("A B -1 A B -1 -1 B\n");
  const LabelId b = t.label_table().find("B");
  OccurrenceBitmap bits(b, t.inverted_list(b).size());
  bits.set(0);
  bits.set(2);
  EXPECT_EQ(materialize(bits, t), (std::vector<NodeId>{1, 4}));
}

// Set algebra against std::set on random pairs, sizes straddling word edges.
TEST(Bitmap, AgreesWithSets) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 2000; ++round) {
    const std::size_t size = std::uniform_int_distribution<std::size_t>(0, 300)(rng);
    const double da = std::uniform_real_distribution<double>(0, 1)(rng);
    const double db = std::uniform_real_distribution<double>(0, 1)(rng);
    const auto sa = random_set(rng, size, da), sb = random_set(rng, size, db);
    const auto a = bitmap_of(sa, size), b = bitmap_of(sb, size);
    std::set<std::size_t> i, u;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(i, i.end()));
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(u, u.end()));
    ASSERT_EQ((a & b), bitmap_of(i, size));
    ASSERT_EQ((a | b), bitmap_of(u, size));
    ASSERT_EQ(a.count(), sa.size());
    ASSERT_EQ(a.subset_of(b), std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));
    std::vector<std::size_t> seen;
    a.for_each_set([&](std::size_t k) { seen.push_back(k); });
    ASSERT_EQ(seen, std::vector<std::size_t>(sa.begin(), sa.end()));
  }
}

}  // namespace
}  // namespace treemine
