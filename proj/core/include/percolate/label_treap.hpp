#pragma once

#include <cstdint>
#include <vector>

namespace percolate {

// A forest of treaps over the labels 1..n, keyed by label, with subtree
// counts for rank queries. Each label owns exactly one node, so a label can
// belong to at most one tree of a given arena at a time. Trees are named by
// their root label; 0 is the empty tree.
//
// Priorities are a fixed hash of the label, which keeps the shape of every
// tree a function of its key set alone.
class LabelTreap {
 public:
  using Root = std::uint32_t;
  static constexpr Root kEmpty = 0;

  explicit LabelTreap(std::uint32_t n);

  std::uint32_t capacity() const noexcept { return n_; }

  std::uint32_t size(Root t) const noexcept { return nodes_[t].count; }

  // Inserts the (currently detached) label into t and returns the new root.
  Root insert(Root t, std::uint32_t label);
  // Removes label from t and returns the new root; the node becomes
  // detached. Throws if the label is not in t.
  Root erase(Root t, std::uint32_t label);
  // Label with 0-based rank in t's in-order sequence.
  std::uint32_t select(Root t, std::uint32_t rank) const;
  // Number of labels in t smaller than label.
  std::uint32_t rank_of(Root t, std::uint32_t label) const;
  bool contains(Root t, std::uint32_t label) const;

  // Union of two trees with disjoint key sets.
  Root unite(Root a, Root b);

  // Appends t's labels in ascending order.
  void collect(Root t, std::vector<std::uint32_t>& out) const;

 private:
  // One cache line holds four nodes; fields of a node are read together.
  struct Node {
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t count = 1;
    std::uint32_t priority = 0;
  };

  void pull(std::uint32_t x) noexcept {
    Node& node = nodes_[x];
    node.count = nodes_[node.left].count + nodes_[node.right].count + 1;
  }
  void detach(std::uint32_t x) noexcept {
    nodes_[x].left = nodes_[x].right = kEmpty;
    nodes_[x].count = 1;
  }
  // Splits t into keys < key and keys > key; key itself must not be in t.
  void split(Root t, std::uint32_t key, Root& lo, Root& hi);
  Root join(Root lo, Root hi);

  std::uint32_t n_;
  std::vector<Node> nodes_;  // nodes_[0] is the empty tree, count 0
};

}  // namespace percolate
