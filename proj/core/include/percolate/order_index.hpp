#pragma once

#include <cstdint>
#include <vector>

#include "percolate/beta.hpp"
#include "percolate/label_treap.hpp"
#include "percolate/partition.hpp"
#include "percolate/vertex.hpp"

namespace percolate {

// How vertices in components of equal size are ordered.
enum class TieBreak {
  // Ascending vertex label. This is the ordering that defines R_beta.
  kLabel,
  // (component minimum label, label). Coarser, cheaper, and not the
  // restricted-set definition; never used by the exact checks.
  kComponentGrouped,
};

// A uniform rank into the restricted set. Randomness is drawn by the caller
// so the fast and the reference selectors can be fed identical ranks.
struct RankDraw {
  std::uint32_t rank = 0;
};

// Maintains the ordering of all vertices by (component size, tie-break key)
// under merges and answers rank-select queries over it. The first
// floor(beta * n) vertices of the ordering form the restricted set.
//
// Layout: a Fenwick tree over component sizes holds how many vertices sit in
// components of each size, which locates the size class of any rank. Each
// size class keeps its members in a label-keyed treap. A component that is
// alone in its size class moves to its new class by relinking its tree, so
// a giant component absorbing small ones costs O(log n) per merge plus the
// size of the absorbed part.
class OrderIndex {
 public:
  static OrderIndex build(const Partition& p, Beta beta,
                          TieBreak tie_break = TieBreak::kLabel);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t restricted_size() const noexcept { return restricted_; }
  Beta beta() const noexcept { return beta_; }
  TieBreak tie_break() const noexcept { return tie_break_; }

  // Vertex with the given rank inside the restricted set.
  VertexId select(RankDraw draw) const;
  // Vertex with the given rank in the full ordering, rank < n.
  VertexId vertex_at(std::uint32_t rank) const;
  // Largest component size that meets the restricted set.
  std::uint32_t alpha() const noexcept { return alpha_; }

  // Number of vertices lying in components of exactly this size.
  std::uint32_t class_vertex_count(std::uint32_t size) const;

  // Mirrors a merge reported by the partition. Throws InvariantViolation if
  // the outcome does not match the state this index tracks.
  void apply_merge(const MergeOutcome& m);

 private:
  OrderIndex(std::uint32_t n, Beta beta, TieBreak tie_break);

  void fenwick_add(std::uint32_t size, std::int64_t delta);
  std::uint32_t fenwick_prefix(std::uint32_t size) const;
  // Smallest size s whose prefix count exceeds rank; offset receives the
  // rank within that class.
  std::uint32_t locate(std::uint32_t rank, std::uint32_t& offset) const;
  void refresh_alpha();

  void apply_merge_label(const MergeOutcome& m);
  void apply_merge_grouped(const MergeOutcome& m);

  std::uint32_t n_;
  Beta beta_;
  std::uint32_t restricted_;
  TieBreak tie_break_;
  std::uint32_t alpha_ = 1;
  std::uint32_t fenwick_top_bit_ = 1;

  std::vector<std::uint32_t> fenwick_;        // by component size
  std::vector<std::uint32_t> class_vertices_; // by component size
  std::vector<std::uint32_t> class_tree_;     // by component size
  std::vector<std::uint32_t> comp_size_;      // by root label, 0 elsewhere

  // kLabel: class trees hold member labels. kComponentGrouped: each
  // component's labels live in their own tree.
  LabelTreap labels_;

  // kLabel only: circular member lists, spliced on merge.
  std::vector<std::uint32_t> next_member_;
  std::vector<std::uint32_t> scratch_;

  // kComponentGrouped only: class trees hold component minimum labels.
  LabelTreap component_mins_;
  std::vector<std::uint32_t> comp_min_;         // by root label
  std::vector<std::uint32_t> comp_tree_by_min_; // by minimum label
};

}  // namespace percolate
