#include "percolate/label_treap.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "percolate/rng.hpp"

namespace percolate {

LabelTreap::LabelTreap(std::uint32_t n) : n_(n), nodes_(std::size_t{n} + 1) {
  nodes_[0].count = 0;
  for (std::uint32_t x = 1; x <= n; ++x) {
    nodes_[x].priority = static_cast<std::uint32_t>(splitmix64(x) >> 32);
  }
}

void LabelTreap::split(Root t, std::uint32_t key, Root& lo, Root& hi) {
  if (t == kEmpty) {
    lo = hi = kEmpty;
    return;
  }
  if (t < key) {
    split(nodes_[t].right, key, nodes_[t].right, hi);
    lo = t;
  } else {
    split(nodes_[t].left, key, lo, nodes_[t].left);
    hi = t;
  }
  pull(t);
}

LabelTreap::Root LabelTreap::join(Root lo, Root hi) {
  if (lo == kEmpty) return hi;
  if (hi == kEmpty) return lo;
  if (nodes_[lo].priority > nodes_[hi].priority) {
    nodes_[lo].right = join(nodes_[lo].right, hi);
    pull(lo);
    return lo;
  }
  nodes_[hi].left = join(lo, nodes_[hi].left);
  pull(hi);
  return hi;
}

LabelTreap::Root LabelTreap::insert(Root t, std::uint32_t label) {
  detach(label);
  if (t == kEmpty) return label;
  const std::uint32_t p = nodes_[label].priority;
  // Walk down to the slot where label becomes the subtree root.
  Root* link = &t;
  while (*link != kEmpty && nodes_[*link].priority >= p) {
    Node& node = nodes_[*link];
    ++node.count;
    link = label < *link ? &node.left : &node.right;
  }
  split(*link, label, nodes_[label].left, nodes_[label].right);
  pull(label);
  *link = label;
  return t;
}

LabelTreap::Root LabelTreap::erase(Root t, std::uint32_t label) {
  if (!contains(t, label)) {
    throw std::logic_error("label " + std::to_string(label) +
                           " not present in tree");
  }
  Root* link = &t;
  while (*link != label) {
    Node& node = nodes_[*link];
    --node.count;
    link = label < *link ? &node.left : &node.right;
  }
  *link = join(nodes_[label].left, nodes_[label].right);
  detach(label);
  return t;
}

std::uint32_t LabelTreap::select(Root t, std::uint32_t rank) const {
  if (rank >= nodes_[t].count) {
    throw std::out_of_range("rank " + std::to_string(rank) +
                            " outside tree of size " +
                            std::to_string(nodes_[t].count));
  }
  for (;;) {
    const Node& node = nodes_[t];
    const std::uint32_t left_count = nodes_[node.left].count;
    if (rank < left_count) {
      t = node.left;
    } else if (rank == left_count) {
      return t;
    } else {
      rank -= left_count + 1;
      t = node.right;
    }
  }
}

std::uint32_t LabelTreap::rank_of(Root t, std::uint32_t label) const {
  std::uint32_t rank = 0;
  while (t != kEmpty) {
    const Node& node = nodes_[t];
    if (label <= t) {
      t = node.left;
    } else {
      rank += nodes_[node.left].count + 1;
      t = node.right;
    }
  }
  return rank;
}

bool LabelTreap::contains(Root t, std::uint32_t label) const {
  while (t != kEmpty) {
    if (t == label) return true;
    t = label < t ? nodes_[t].left : nodes_[t].right;
  }
  return false;
}

LabelTreap::Root LabelTreap::unite(Root a, Root b) {
  if (a == kEmpty) return b;
  if (b == kEmpty) return a;
  if (nodes_[a].priority < nodes_[b].priority) std::swap(a, b);
  Root lo = kEmpty;
  Root hi = kEmpty;
  split(b, a, lo, hi);
  nodes_[a].left = unite(nodes_[a].left, lo);
  nodes_[a].right = unite(nodes_[a].right, hi);
  pull(a);
  return a;
}

void LabelTreap::collect(Root t, std::vector<std::uint32_t>& out) const {
  if (t == kEmpty) return;
  collect(nodes_[t].left, out);
  out.push_back(t);
  collect(nodes_[t].right, out);
}

}  // namespace percolate
