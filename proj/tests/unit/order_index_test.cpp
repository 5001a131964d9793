#include "percolate/order_index.hpp"

#include <gtest/gtest.h>

#include <random>
#include <tuple>

#include "percolate/errors.hpp"
#include "percolate/order_reference.hpp"

namespace percolate {
namespace {

Partition partition_with(std::uint32_t n,
                         std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> edges) {
  Partition p(n);
  for (auto [u, v] : edges) p.unite(VertexId{u}, VertexId{v});
  return p;
}

std::vector<std::uint32_t> labels(const std::vector<VertexId>& vs) {
  std::vector<std::uint32_t> out;
  for (auto v : vs) out.push_back(v.label);
  return out;
}

TEST(OrderIndex, RestrictedSizeIsFloor) {
  Partition p(10);
  EXPECT_EQ(OrderIndex::build(p, Beta::parse("0.5")).restricted_size(), 5u);
  EXPECT_EQ(OrderIndex::build(p, Beta::parse("0.29")).restricted_size(), 2u);
  Partition q(100);
  EXPECT_EQ(OrderIndex::build(q, Beta::parse("0.29")).restricted_size(), 29u);
}

TEST(OrderIndex, EmptyRestrictedSetRejected) {
  Partition p(3);
  EXPECT_THROW(OrderIndex::build(p, Beta::parse("0.25")), std::invalid_argument);
}

TEST(OrderIndex, SmallComponentsFirstThenLabels) {
  const Partition p = partition_with(6, {{1, 4}});
  const Beta half = Beta::parse("0.5");
  EXPECT_EQ(labels(reference_order(p)), (std::vector<std::uint32_t>{2, 3, 5, 6, 1, 4}));

  const OrderIndex idx = OrderIndex::build(p, half);
  EXPECT_EQ(idx.restricted_size(), 3u);
  EXPECT_EQ(idx.select(RankDraw{0}), VertexId{2});
  EXPECT_EQ(idx.select(RankDraw{1}), VertexId{3});
  EXPECT_EQ(idx.select(RankDraw{2}), VertexId{5});
  EXPECT_EQ(reference_select(p, half, RankDraw{0}), VertexId{2});
  EXPECT_EQ(reference_select(p, half, RankDraw{2}), VertexId{5});
  EXPECT_THROW(idx.select(RankDraw{3}), std::out_of_range);
  EXPECT_THROW(reference_select(p, half, RankDraw{3}), std::out_of_range);
}

TEST(OrderIndex, CutoffSplitsAComponent) {
  const Partition p = partition_with(4, {{1, 2}, {3, 4}});
  const Beta b = Beta::parse("0.75");
  const OrderIndex idx = OrderIndex::build(p, b);
  EXPECT_EQ(idx.restricted_size(), 3u);
  EXPECT_EQ(idx.select(RankDraw{2}), VertexId{3});
  EXPECT_EQ(reference_select(p, b, RankDraw{2}), VertexId{3});
  EXPECT_EQ(idx.alpha(), 2u);
  EXPECT_EQ(reference_alpha(p, b), 2u);
}

TEST(OrderIndex, FreshPartition) {
  Partition p(20);
  const OrderIndex idx = OrderIndex::build(p, Beta::parse("0.5"));
  EXPECT_EQ(idx.alpha(), 1u);
  for (std::uint32_t r = 0; r < idx.restricted_size(); ++r) {
    EXPECT_EQ(idx.select(RankDraw{r}), VertexId{r + 1});
  }
}

TEST(OrderIndex, FullBetaCoversEverything) {
  const Partition p = partition_with(7, {{1, 5}, {5, 6}, {2, 3}});
  const OrderIndex idx = OrderIndex::build(p, Beta::parse("1"));
  EXPECT_EQ(idx.restricted_size(), 7u);
  EXPECT_EQ(idx.alpha(), p.largest_size());
  std::vector<VertexId> got;
  for (std::uint32_t r = 0; r < 7; ++r) got.push_back(idx.select(RankDraw{r}));
  EXPECT_EQ(got, reference_order(p));
}

TEST(OrderIndex, ApplyMergeMovesSizeClasses) {
  Partition p(6);
  OrderIndex idx = OrderIndex::build(p, Beta::parse("0.5"));
  idx.apply_merge(p.unite(VertexId{1}, VertexId{4}));
  EXPECT_EQ(idx.class_vertex_count(1), 4u);
  EXPECT_EQ(idx.class_vertex_count(2), 2u);

  idx.apply_merge(p.unite(VertexId{2}, VertexId{3}));
  idx.apply_merge(p.unite(VertexId{2}, VertexId{5}));
  EXPECT_EQ(idx.class_vertex_count(3), 3u);
  std::uint32_t total = 0;
  for (std::uint32_t s = 1; s <= 6; ++s) total += idx.class_vertex_count(s);
  EXPECT_EQ(total, 6u);
}

TEST(OrderIndex, StaleMergeOutcomeIsAHardFailure) {
  Partition p(6);
  OrderIndex idx = OrderIndex::build(p, Beta::parse("0.5"));
  const MergeOutcome m = p.unite(VertexId{1}, VertexId{2});
  idx.apply_merge(m);
  EXPECT_THROW(idx.apply_merge(m), InvariantViolation);

  MergeOutcome not_merged = p.unite(VertexId{1}, VertexId{2});
  EXPECT_THROW(idx.apply_merge(not_merged), InvariantViolation);

  MergeOutcome wrong_size = p.unite(VertexId{3}, VertexId{4});
  wrong_size.size_a = 5;
  EXPECT_THROW(idx.apply_merge(wrong_size), InvariantViolation);
}

TEST(OrderIndex, ComponentGroupedOrdering) {
  // {2,5} and {1,6} have size 2; grouped puts the component with min 1 first.
  const Partition p = partition_with(6, {{2, 5}, {1, 6}});
  const OrderIndex idx = OrderIndex::build(p, Beta::parse("1"), TieBreak::kComponentGrouped);
  std::vector<std::uint32_t> got;
  for (std::uint32_t r = 0; r < 6; ++r) got.push_back(idx.vertex_at(r).label);
  EXPECT_EQ(got, (std::vector<std::uint32_t>{3, 4, 1, 6, 2, 5}));
  EXPECT_EQ(labels(reference_order(p, TieBreak::kComponentGrouped)), got);
  EXPECT_EQ(labels(reference_order(p)), (std::vector<std::uint32_t>{3, 4, 1, 2, 5, 6}));
}

// Random merge sequences: after every merge, every rank of the incremental
// index matches the sorted reference and a freshly built index.
void check_against_reference(TieBreak tie, std::uint32_t seed) {
  std::mt19937 gen(seed);
  for (int round = 0; round < 12; ++round) {
    const std::uint32_t n = 2 + gen() % 300;
    const Beta beta = Beta::ratio(1 + gen() % 100, 100);
    if (beta.restricted_size(n) == 0) continue;
    Partition p(n);
    OrderIndex idx = OrderIndex::build(p, beta, tie);
    for (std::uint32_t step = 0; step < n + 10; ++step) {
      // Mix of uniform pairs and restricted-style pairs to grow big components.
      const std::uint32_t u = 1 + gen() % n;
      const std::uint32_t v =
          step % 2 ? idx.select(RankDraw{static_cast<std::uint32_t>(gen() % idx.restricted_size())}).label
                   : 1 + gen() % n;
      const MergeOutcome m = p.unite(VertexId{u}, VertexId{v});
      if (!m.merged) continue;
      idx.apply_merge(m);

      const auto ref = reference_order(p, tie);
      const OrderIndex rebuilt = OrderIndex::build(p, beta, tie);
      std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> prev{0, 0, 0};
      for (std::uint32_t r = 0; r < n; ++r) {
        const VertexId got = idx.vertex_at(r);
        ASSERT_EQ(got, ref[r]) << "n=" << n << " rank=" << r;
        ASSERT_EQ(rebuilt.vertex_at(r), got);
        const VertexId root = p.root_of(got);
        const std::uint32_t size = p.component_size_of_root(root);
        std::tuple<std::uint32_t, std::uint32_t, std::uint32_t> key{size, 0, got.label};
        if (tie == TieBreak::kLabel) ASSERT_LT(prev, key);
        prev = key;
      }
      const VertexId boundary = idx.select(RankDraw{idx.restricted_size() - 1});
      ASSERT_EQ(idx.alpha(), p.component_size_of_root(p.root_of(boundary)));
      if (tie == TieBreak::kLabel) ASSERT_EQ(idx.alpha(), reference_alpha(p, beta));
    }
  }
}

TEST(OrderIndex, LabelOrderMatchesReferenceExhaustively) {
  check_against_reference(TieBreak::kLabel, 2024);
}

TEST(OrderIndex, GroupedOrderMatchesReferenceExhaustively) {
  check_against_reference(TieBreak::kComponentGrouped, 99);
}

}  // namespace
}  // namespace percolate
