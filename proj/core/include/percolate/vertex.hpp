#pragma once

#include <compare>
#include <cstdint>

namespace percolate {

// A vertex of [n] = {1, ..., n}. Label 0 is never a valid vertex; the
// containers in this library use it as a null slot.
struct VertexId {
  std::uint32_t label = 0;

  constexpr auto operator<=>(const VertexId&) const = default;
};

}  // namespace percolate
