#include "percolate/order_reference.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

namespace percolate {

std::vector<VertexId> reference_order(const Partition& p, TieBreak tie_break) {
  const std::uint32_t n = p.n();
  std::vector<std::uint32_t> root(std::size_t{n} + 1);
  std::vector<std::uint32_t> min_label(std::size_t{n} + 1, 0);
  for (std::uint32_t v = 1; v <= n; ++v) {
    root[v] = p.root_of(VertexId{v}).label;
    if (min_label[root[v]] == 0) min_label[root[v]] = v;
  }

  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> keys;
  keys.reserve(n);
  for (std::uint32_t v = 1; v <= n; ++v) {
    const std::uint32_t size = p.component_size_of_root(VertexId{root[v]});
    const std::uint32_t group =
        tie_break == TieBreak::kLabel ? 0 : min_label[root[v]];
    keys.emplace_back(size, group, v);
  }
  std::sort(keys.begin(), keys.end());

  std::vector<VertexId> order;
  order.reserve(n);
  for (const auto& key : keys) order.push_back(VertexId{std::get<2>(key)});
  return order;
}

VertexId reference_select(const Partition& p, Beta beta, RankDraw draw,
                          TieBreak tie_break) {
  const std::uint32_t restricted = beta.restricted_size(p.n());
  if (restricted == 0) {
    throw std::invalid_argument("restricted set is empty");
  }
  if (draw.rank >= restricted) {
    throw std::out_of_range("rank " + std::to_string(draw.rank) +
                            " outside restricted set of size " +
                            std::to_string(restricted));
  }
  return reference_order(p, tie_break)[draw.rank];
}

std::uint32_t reference_alpha(const Partition& p, Beta beta) {
  const VertexId boundary =
      reference_select(p, beta, RankDraw{beta.restricted_size(p.n()) - 1});
  return p.component_size_of_root(p.root_of(boundary));
}

}  // namespace percolate
