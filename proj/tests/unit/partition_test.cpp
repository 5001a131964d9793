#include "percolate/partition.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"

namespace percolate {
namespace {

TEST(Partition, RejectsEmptyVertexSet) {
  EXPECT_THROW(Partition(0), std::invalid_argument);
}

TEST(Partition, SingleVertex) {
  Partition p(1);
  EXPECT_EQ(p.component_count(), 1u);
  EXPECT_EQ(p.largest_size(), 1u);
  EXPECT_EQ(p.component_size(VertexId{1}), 1u);
}

TEST(Partition, FreshIsAllSingletons) {
  Partition p(5);
  EXPECT_EQ(p.component_count(), 5u);
  EXPECT_EQ(p.largest_size(), 1u);
  EXPECT_EQ(p.edge_count(), 0u);
  for (std::uint32_t v = 1; v <= 5; ++v) {
    EXPECT_EQ(p.component_size(VertexId{v}), 1u);
    EXPECT_EQ(p.find(VertexId{v}), VertexId{v});
  }
}

TEST(Partition, LargeFreshSumsToN) {
  Partition p(1'000'000);
  std::uint64_t total = 0;
  for (std::uint32_t v = 1; v <= p.n(); ++v) {
    if (p.root_of(VertexId{v}) == VertexId{v}) total += p.component_size_of_root(VertexId{v});
  }
  EXPECT_EQ(total, 1'000'000u);
}

TEST(Partition, UnionSequence) {
  Partition p(4);
  auto m = p.unite(VertexId{1}, VertexId{2});
  EXPECT_TRUE(m.merged);
  EXPECT_EQ(m.new_size, 2u);
  EXPECT_EQ(p.largest_size(), 2u);
  EXPECT_EQ(p.find(VertexId{1}), p.find(VertexId{2}));

  m = p.unite(VertexId{2}, VertexId{3});
  EXPECT_TRUE(m.merged);
  EXPECT_EQ(m.new_size, 3u);
  EXPECT_EQ(m.size_a, 2u);
  EXPECT_EQ(m.size_b, 1u);

  m = p.unite(VertexId{1}, VertexId{3});
  EXPECT_FALSE(m.merged);
  EXPECT_EQ(m.root_a, m.root_b);
  EXPECT_EQ(p.edge_count(), 2u);
}

TEST(Partition, HandEnumeratedSizes) {
  Partition p(6);
  p.unite(VertexId{1}, VertexId{2});
  p.unite(VertexId{3}, VertexId{4});
  p.unite(VertexId{1}, VertexId{3});
  EXPECT_EQ(p.largest_size(), 4u);
  EXPECT_EQ(p.component_count(), 3u);
  EXPECT_GE(p.largest_size() * p.component_count(), p.n());
}

TEST(Partition, EqualSizesKeepSmallerRootLabel) {
  Partition p(4);
  p.unite(VertexId{3}, VertexId{4});
  const auto m = p.unite(VertexId{2}, VertexId{1});
  EXPECT_EQ(m.new_root, VertexId{1});
  const auto m2 = p.unite(VertexId{4}, VertexId{2});
  EXPECT_EQ(m2.new_root, VertexId{1});
}

TEST(Partition, FindIsIdempotent) {
  Partition p(10);
  p.unite(VertexId{1}, VertexId{2});
  p.unite(VertexId{3}, VertexId{2});
  for (std::uint32_t v = 1; v <= 10; ++v) {
    const VertexId r = p.find(VertexId{v});
    EXPECT_EQ(p.find(r), r);
    EXPECT_EQ(p.root_of(VertexId{v}), r);
  }
}

TEST(Partition, OutOfRangeVertices) {
  Partition p(3);
  EXPECT_THROW(p.find(VertexId{0}), std::out_of_range);
  EXPECT_THROW(p.find(VertexId{4}), std::out_of_range);
  EXPECT_THROW(p.unite(VertexId{1}, VertexId{4}), std::out_of_range);
  EXPECT_THROW(p.component_size(VertexId{9}), std::out_of_range);
}

TEST(Partition, AgreesWithExplicitSetsOnRandomUnions) {
  std::mt19937 gen(12345);
  for (int round = 0; round < 40; ++round) {
    const std::uint32_t n = 1 + gen() % 500;
    Partition p(n);
    testing::SetPartition ref(n);
    std::uint32_t last_largest = 1;
    for (int i = 0; i < 2 * static_cast<int>(n); ++i) {
      const std::uint32_t u = 1 + gen() % n;
      const std::uint32_t v = 1 + gen() % n;
      const bool expected = ref.unite(u, v);
      const auto m = p.unite(VertexId{u}, VertexId{v});
      ASSERT_EQ(m.merged, expected);
      if (m.merged) ASSERT_EQ(m.new_size, m.size_a + m.size_b);

      ASSERT_EQ(p.largest_size(), ref.largest());
      ASSERT_EQ(p.component_count(), ref.count());
      ASSERT_GE(p.largest_size(), last_largest);
      last_largest = p.largest_size();
    }
    std::uint64_t total = 0;
    for (std::uint32_t v = 1; v <= n; ++v) {
      ASSERT_EQ(p.component_size(VertexId{v}), ref.size_of(v));
      ASSERT_EQ(p.find(VertexId{v}) == p.find(VertexId{1}), ref.same(v, 1));
      if (p.find(VertexId{v}) == VertexId{v}) total += p.component_size(VertexId{v});
    }
    ASSERT_EQ(total, n);
    ASSERT_EQ(p.component_count() + p.edge_count(), n);
  }
}

}  // namespace
}  // namespace percolate
