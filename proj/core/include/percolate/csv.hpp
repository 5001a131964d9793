#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "percolate/time_series.hpp"

namespace percolate {

inline constexpr const char* kSeriesHeader =
    "step,frac_steps,L1,L1_frac,alpha,n_components,n_edges";

// Schema or I/O failure. line() is 1-based, 0 when not tied to a line.
class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " +
                                           what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The file starts with "# n=<n>", then one "# " line per comment, then the
// header and one row per point. Fractions carry 9 significant digits.
std::string format_series_csv(const TimeSeries& series,
                              const std::vector<std::string>& comments = {});
void write_csv(const TimeSeries& series, const std::filesystem::path& path,
               const std::vector<std::string>& comments = {});

TimeSeries parse_series_csv(const std::string& text);
TimeSeries read_csv(const std::filesystem::path& path);

// Writes text to path through a temporary file in the same directory, so a
// failure never leaves a partial file behind.
void write_file_atomically(const std::filesystem::path& path,
                           const std::string& text);

}  // namespace percolate
