#pragma once

#include <cstdint>
#include <vector>

namespace percolate {

// State after `step` steps. alpha is 0 for processes without a restricted
// set; edge_count counts merging edges only.
struct TimeSeriesPoint {
  std::uint64_t step = 0;
  std::uint32_t l1 = 0;
  std::uint32_t alpha = 0;
  std::uint32_t component_count = 0;
  std::uint64_t edge_count = 0;

  friend bool operator==(const TimeSeriesPoint&,
                         const TimeSeriesPoint&) = default;
};

struct TimeSeries {
  std::uint32_t n = 0;
  std::vector<TimeSeriesPoint> points;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

}  // namespace percolate
