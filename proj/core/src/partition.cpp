#include "percolate/partition.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace percolate {

Partition::Partition(std::uint32_t n)
    : n_(n), parent_(std::size_t{n} + 1), size_(std::size_t{n} + 1, 1),
      component_count_(n) {
  if (n == 0) throw std::invalid_argument("partition needs n >= 1");
  std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  size_[0] = 0;
}

void Partition::check(VertexId v) const {
  if (!contains(v)) {
    throw std::out_of_range("vertex " + std::to_string(v.label) +
                            " outside [1, " + std::to_string(n_) + "]");
  }
}

VertexId Partition::find(VertexId v) {
  check(v);
  std::uint32_t root = v.label;
  while (parent_[root] != root) root = parent_[root];
  std::uint32_t x = v.label;
  while (parent_[x] != root) {
    const std::uint32_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return VertexId{root};
}

VertexId Partition::root_of(VertexId v) const {
  check(v);
  std::uint32_t root = v.label;
  while (parent_[root] != root) root = parent_[root];
  return VertexId{root};
}

MergeOutcome Partition::unite(VertexId u, VertexId v) {
  MergeOutcome out;
  out.root_a = find(u);
  out.root_b = find(v);
  out.size_a = size_[out.root_a.label];
  out.size_b = size_[out.root_b.label];
  if (out.root_a == out.root_b) {
    out.new_root = out.root_a;
    out.new_size = out.size_a;
    return out;
  }

  std::uint32_t keep = out.root_a.label;
  std::uint32_t drop = out.root_b.label;
  const bool swap_roots =
      size_[drop] > size_[keep] || (size_[drop] == size_[keep] && drop < keep);
  if (swap_roots) std::swap(keep, drop);

  parent_[drop] = keep;
  size_[keep] += size_[drop];
  --component_count_;
  ++edge_count_;
  if (size_[keep] > largest_) largest_ = size_[keep];

  out.merged = true;
  out.new_root = VertexId{keep};
  out.new_size = size_[keep];
  return out;
}

std::uint32_t Partition::component_size(VertexId v) {
  return size_[find(v).label];
}

std::uint32_t Partition::component_size_of_root(VertexId root) const {
  check(root);
  if (parent_[root.label] != root.label) {
    throw std::invalid_argument("vertex " + std::to_string(root.label) +
                                " is not a root");
  }
  return size_[root.label];
}

}  // namespace percolate
