#include "percolate/label_treap.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

namespace percolate {
namespace {

TEST(LabelTreap, InsertSelectErase) {
  LabelTreap t(10);
  LabelTreap::Root r = LabelTreap::kEmpty;
  for (std::uint32_t v : {7u, 3u, 9u, 1u, 5u}) r = t.insert(r, v);
  ASSERT_EQ(t.size(r), 5u);
  EXPECT_EQ(t.select(r, 0), 1u);
  EXPECT_EQ(t.select(r, 2), 5u);
  EXPECT_EQ(t.select(r, 4), 9u);
  EXPECT_EQ(t.rank_of(r, 7), 3u);
  r = t.erase(r, 5);
  EXPECT_FALSE(t.contains(r, 5));
  EXPECT_EQ(t.select(r, 2), 7u);
  EXPECT_THROW(t.erase(r, 5), std::logic_error);
  EXPECT_THROW(t.select(r, 4), std::out_of_range);
}

// Random interleavings of insert, erase and union against std::set.
TEST(LabelTreap, MatchesOrderedSet) {
  constexpr std::uint32_t kN = 3000;
  std::mt19937 gen(7);
  LabelTreap t(kN);
  std::vector<LabelTreap::Root> roots(8, LabelTreap::kEmpty);
  std::vector<std::set<std::uint32_t>> sets(8);
  std::vector<int> home(kN + 1, -1);

  for (int op = 0; op < 40000; ++op) {
    const std::uint32_t v = 1 + gen() % kN;
    const int which = static_cast<int>(gen() % 8);
    const int kind = static_cast<int>(gen() % 10);
    if (kind < 6) {
      if (home[v] < 0) {
        roots[which] = t.insert(roots[which], v);
        sets[which].insert(v);
        home[v] = which;
      } else {
        roots[home[v]] = t.erase(roots[home[v]], v);
        sets[home[v]].erase(v);
        home[v] = -1;
      }
    } else if (kind < 7) {
      const int other = static_cast<int>(gen() % 8);
      if (other != which) {
        roots[which] = t.unite(roots[which], roots[other]);
        roots[other] = LabelTreap::kEmpty;
        for (auto x : sets[other]) home[x] = which;
        sets[which].merge(sets[other]);
      }
    } else {
      ASSERT_EQ(t.size(roots[which]), sets[which].size());
      if (!sets[which].empty()) {
        const auto r = static_cast<std::uint32_t>(gen() % sets[which].size());
        ASSERT_EQ(t.select(roots[which], r), *std::next(sets[which].begin(), r));
      }
    }
  }
  for (int i = 0; i < 8; ++i) {
    std::vector<std::uint32_t> got;
    t.collect(roots[i], got);
    ASSERT_TRUE(std::equal(got.begin(), got.end(), sets[i].begin(), sets[i].end()));
  }
}

}  // namespace
}  // namespace percolate
