#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "percolate/vertex.hpp"

namespace percolate {

// Result of a union request. Roots and sizes are the ones observed before
// the merge so that consumers can retire the old size classes.
struct MergeOutcome {
  bool merged = false;
  VertexId root_a;
  VertexId root_b;
  std::uint32_t size_a = 0;
  std::uint32_t size_b = 0;
  VertexId new_root;
  std::uint32_t new_size = 0;
};

// Union-find over the vertex set [n] with union by size and path
// compression. Equal sizes attach the larger root label under the smaller
// one, so the root of every component is a function of the merge history.
class Partition {
 public:
  explicit Partition(std::uint32_t n);

  std::uint32_t n() const noexcept { return n_; }

  // Root of v's component, compressing the path on the way.
  VertexId find(VertexId v);
  // Root lookup without touching the parent links.
  VertexId root_of(VertexId v) const;

  MergeOutcome unite(VertexId u, VertexId v);

  std::uint32_t component_size(VertexId v);
  std::uint32_t component_size_of_root(VertexId root) const;
  std::uint32_t largest_size() const noexcept { return largest_; }
  std::uint32_t component_count() const noexcept { return component_count_; }
  // Number of successful merges, i.e. edges of a spanning forest.
  std::uint64_t edge_count() const noexcept { return edge_count_; }

  bool contains(VertexId v) const noexcept {
    return v.label >= 1 && v.label <= n_;
  }

 private:
  void check(VertexId v) const;

  std::uint32_t n_;
  std::vector<std::uint32_t> parent_;  // indexed by label, slot 0 unused
  std::vector<std::uint32_t> size_;    // meaningful at roots only
  std::uint32_t component_count_;
  std::uint32_t largest_ = 1;
  std::uint64_t edge_count_ = 0;
};

}  // namespace percolate
