#pragma once

#include <cstdint>
#include <vector>

#include "percolate/beta.hpp"
#include "percolate/order_index.hpp"
#include "percolate/partition.hpp"
#include "percolate/vertex.hpp"

namespace percolate {

// Brute-force realisation of the vertex ordering: materialises every
// (component size, tie key, label) triple and sorts. O(n log n) per call;
// exists to check OrderIndex.
std::vector<VertexId> reference_order(const Partition& p,
                                      TieBreak tie_break = TieBreak::kLabel);

VertexId reference_select(const Partition& p, Beta beta, RankDraw draw,
                          TieBreak tie_break = TieBreak::kLabel);

std::uint32_t reference_alpha(const Partition& p, Beta beta);

}  // namespace percolate
