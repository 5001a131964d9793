#include "percolate/order_index.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "percolate/errors.hpp"

namespace percolate {

namespace {

std::string describe(const MergeOutcome& m) {
  return "merge(" + std::to_string(m.root_a.label) + ":" +
         std::to_string(m.size_a) + ", " + std::to_string(m.root_b.label) +
         ":" + std::to_string(m.size_b) + ")";
}

}  // namespace

OrderIndex::OrderIndex(std::uint32_t n, Beta beta, TieBreak tie_break)
    : n_(n),
      beta_(beta),
      restricted_(beta.restricted_size(n)),
      tie_break_(tie_break),
      fenwick_(std::size_t{n} + 1, 0),
      class_vertices_(std::size_t{n} + 1, 0),
      class_tree_(std::size_t{n} + 1, LabelTreap::kEmpty),
      comp_size_(std::size_t{n} + 1, 0),
      labels_(n),
      component_mins_(tie_break == TieBreak::kComponentGrouped ? n : 0) {
  if (restricted_ == 0) {
    throw std::invalid_argument(
        "restricted set is empty: floor(beta * n) = 0 for beta = " +
        beta.to_string() + ", n = " + std::to_string(n));
  }
  fenwick_top_bit_ = std::bit_floor(n);
  if (tie_break_ == TieBreak::kLabel) {
    next_member_.resize(std::size_t{n} + 1);
  } else {
    comp_min_.resize(std::size_t{n} + 1, 0);
    comp_tree_by_min_.resize(std::size_t{n} + 1, LabelTreap::kEmpty);
  }
}

OrderIndex OrderIndex::build(const Partition& p, Beta beta,
                             TieBreak tie_break) {
  OrderIndex idx(p.n(), beta, tie_break);
  const std::uint32_t n = p.n();

  std::vector<std::uint32_t> root(std::size_t{n} + 1);
  for (std::uint32_t v = 1; v <= n; ++v) {
    const std::uint32_t r = p.root_of(VertexId{v}).label;
    root[v] = r;
    if (idx.comp_size_[r] == 0) {
      idx.comp_size_[r] = p.component_size_of_root(VertexId{r});
    }
  }

  for (std::uint32_t v = 1; v <= n; ++v) {
    const std::uint32_t r = root[v];
    const std::uint32_t s = idx.comp_size_[r];
    ++idx.class_vertices_[s];
    if (tie_break == TieBreak::kLabel) {
      idx.class_tree_[s] = idx.labels_.insert(idx.class_tree_[s], v);
      if (v == r) {
        idx.next_member_[v] = v;
      }
    } else {
      if (idx.comp_min_[r] == 0) {
        // v ascends, so the first member seen is the minimum.
        idx.comp_min_[r] = v;
        idx.class_tree_[s] = idx.component_mins_.insert(idx.class_tree_[s], v);
      }
      std::uint32_t& tree = idx.comp_tree_by_min_[idx.comp_min_[r]];
      tree = idx.labels_.insert(tree, v);
    }
  }
  if (tie_break == TieBreak::kLabel) {
    for (std::uint32_t v = 1; v <= n; ++v) {
      const std::uint32_t r = root[v];
      if (v != r) {
        idx.next_member_[v] = idx.next_member_[r];
        idx.next_member_[r] = v;
      }
    }
  }
  for (std::uint32_t s = 1; s <= n; ++s) {
    if (idx.class_vertices_[s] != 0) idx.fenwick_add(s, idx.class_vertices_[s]);
  }
  idx.refresh_alpha();
  return idx;
}

void OrderIndex::fenwick_add(std::uint32_t size, std::int64_t delta) {
  for (std::uint32_t i = size; i <= n_; i += i & (~i + 1)) {
    fenwick_[i] = static_cast<std::uint32_t>(fenwick_[i] + delta);
  }
}

std::uint32_t OrderIndex::fenwick_prefix(std::uint32_t size) const {
  std::uint32_t total = 0;
  for (std::uint32_t i = size; i > 0; i &= i - 1) total += fenwick_[i];
  return total;
}

std::uint32_t OrderIndex::locate(std::uint32_t rank,
                                 std::uint32_t& offset) const {
  // Largest position whose prefix is <= rank, then step one past it.
  std::uint32_t pos = 0;
  std::uint32_t remaining = rank;
  for (std::uint32_t step = fenwick_top_bit_; step != 0; step >>= 1) {
    const std::uint32_t next = pos + step;
    if (next <= n_ && fenwick_[next] <= remaining) {
      pos = next;
      remaining -= fenwick_[next];
    }
  }
  offset = remaining;
  return pos + 1;
}

void OrderIndex::refresh_alpha() {
  std::uint32_t offset = 0;
  alpha_ = locate(restricted_ - 1, offset);
}

std::uint32_t OrderIndex::class_vertex_count(std::uint32_t size) const {
  if (size == 0 || size > n_) {
    throw std::out_of_range("component size " + std::to_string(size) +
                            " outside [1, " + std::to_string(n_) + "]");
  }
  return class_vertices_[size];
}

VertexId OrderIndex::select(RankDraw draw) const {
  if (draw.rank >= restricted_) {
    throw std::out_of_range("rank " + std::to_string(draw.rank) +
                            " outside restricted set of size " +
                            std::to_string(restricted_));
  }
  return vertex_at(draw.rank);
}

VertexId OrderIndex::vertex_at(std::uint32_t rank) const {
  if (rank >= n_) {
    throw std::out_of_range("rank " + std::to_string(rank) + " outside [0, " +
                            std::to_string(n_) + ")");
  }
  std::uint32_t offset = 0;
  const std::uint32_t s = locate(rank, offset);
  if (tie_break_ == TieBreak::kLabel) {
    return VertexId{labels_.select(class_tree_[s], offset)};
  }
  const std::uint32_t min_label =
      component_mins_.select(class_tree_[s], offset / s);
  return VertexId{labels_.select(comp_tree_by_min_[min_label], offset % s)};
}

void OrderIndex::apply_merge(const MergeOutcome& m) {
  const std::uint32_t ra = m.root_a.label;
  const std::uint32_t rb = m.root_b.label;
  const bool in_range = ra >= 1 && ra <= n_ && rb >= 1 && rb <= n_;
  if (!m.merged || !in_range || ra == rb || comp_size_[ra] != m.size_a ||
      comp_size_[rb] != m.size_b ||
      m.new_size != std::uint64_t{m.size_a} + m.size_b ||
      (m.new_root != m.root_a && m.new_root != m.root_b)) {
    throw InvariantViolation("order index out of sync with partition at " +
                             describe(m));
  }

  if (tie_break_ == TieBreak::kLabel) {
    apply_merge_label(m);
  } else {
    apply_merge_grouped(m);
  }

  fenwick_add(m.size_a, -static_cast<std::int64_t>(m.size_a));
  fenwick_add(m.size_b, -static_cast<std::int64_t>(m.size_b));
  fenwick_add(m.new_size, m.new_size);
  class_vertices_[m.size_a] -= m.size_a;
  class_vertices_[m.size_b] -= m.size_b;
  class_vertices_[m.new_size] += m.new_size;

  comp_size_[ra] = 0;
  comp_size_[rb] = 0;
  comp_size_[m.new_root.label] = m.new_size;
  refresh_alpha();
}

void OrderIndex::apply_merge_label(const MergeOutcome& m) {
  const std::uint32_t ra = m.root_a.label;
  const std::uint32_t rb = m.root_b.label;
  LabelTreap::Root moved = LabelTreap::kEmpty;
  scratch_.clear();

  auto take_members = [&](std::uint32_t root, std::uint32_t size) {
    std::uint32_t& tree = class_tree_[size];
    std::uint32_t v = root;
    do {
      tree = labels_.erase(tree, v);
      scratch_.push_back(v);
      v = next_member_[v];
    } while (v != root);
  };

  if (m.size_a == m.size_b) {
    const std::uint32_t s = m.size_a;
    if (class_vertices_[s] == 2 * s) {
      // The two merging components are the whole class.
      moved = class_tree_[s];
      class_tree_[s] = LabelTreap::kEmpty;
    } else {
      take_members(ra, s);
      take_members(rb, s);
    }
  } else {
    for (const auto& [root, size] : {std::pair{ra, m.size_a},
                                     std::pair{rb, m.size_b}}) {
      if (class_vertices_[size] == size) {
        moved = labels_.unite(moved, class_tree_[size]);
        class_tree_[size] = LabelTreap::kEmpty;
      } else {
        take_members(root, size);
      }
    }
  }

  std::uint32_t& target = class_tree_[m.new_size];
  target = labels_.unite(target, moved);
  for (const std::uint32_t v : scratch_) target = labels_.insert(target, v);

  std::swap(next_member_[ra], next_member_[rb]);
}

void OrderIndex::apply_merge_grouped(const MergeOutcome& m) {
  const std::uint32_t ra = m.root_a.label;
  const std::uint32_t rb = m.root_b.label;
  const std::uint32_t min_a = comp_min_[ra];
  const std::uint32_t min_b = comp_min_[rb];

  class_tree_[m.size_a] = component_mins_.erase(class_tree_[m.size_a], min_a);
  class_tree_[m.size_b] = component_mins_.erase(class_tree_[m.size_b], min_b);

  const std::uint32_t merged_min = std::min(min_a, min_b);
  const std::uint32_t merged_tree =
      labels_.unite(comp_tree_by_min_[min_a], comp_tree_by_min_[min_b]);
  comp_tree_by_min_[min_a] = LabelTreap::kEmpty;
  comp_tree_by_min_[min_b] = LabelTreap::kEmpty;
  comp_tree_by_min_[merged_min] = merged_tree;

  comp_min_[ra] = 0;
  comp_min_[rb] = 0;
  comp_min_[m.new_root.label] = merged_min;
  class_tree_[m.new_size] =
      component_mins_.insert(class_tree_[m.new_size], merged_min);
}

}  // namespace percolate
