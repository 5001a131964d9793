#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "percolate/process.hpp"
#include "percolate/time_series.hpp"

namespace percolate {

// Parameters of the explosive-window measurement: the run is observed at
// T_C and again ceil(n / D) steps later.
struct WindowParams {
  double max_small_l1 = 0.0;   // K
  std::uint32_t chunk_size = 2;  // C
  double divisor = 1.0;        // D
  double epsilon = 0.1;

  friend bool operator==(const WindowParams&, const WindowParams&) = default;
};

struct ProcessConfig {
  ProcessKind kind = ProcessKind::erdos_renyi();
  std::uint32_t n = 0;
  std::uint64_t max_steps = 0;
  std::uint64_t seed = 0;
  std::uint64_t record_every = 1;
  std::vector<std::uint32_t> tracked_k;  // ascending
  std::optional<WindowParams> window;
  // Stop once L1 >= fraction * n.
  std::optional<double> stop_l1_fraction;
  // Stop once the window measurement is complete.
  bool stop_after_window = false;
  ProcessOptions options;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  // One-line description, echoed into CSV comments.
  std::string describe() const;
};

// alpha_T = alpha for every step T from `step` up to the next entry. The
// last entry may name step max_steps + 1: the state the next step would
// draw from.
struct AlphaChange {
  std::uint64_t step = 0;
  std::uint32_t alpha = 0;

  friend bool operator==(const AlphaChange&, const AlphaChange&) = default;
};
using AlphaTrace = std::vector<AlphaChange>;

struct ThresholdTime {
  std::uint32_t k = 0;
  std::optional<std::uint64_t> step;  // empty: not reached

  friend bool operator==(const ThresholdTime&, const ThresholdTime&) = default;
};

struct WindowReport {
  WindowParams params;
  std::uint64_t window_steps = 0;  // ceil(n / D)
  std::optional<std::uint64_t> t_c;
  std::uint32_t l1_at_t_c = 0;
  std::optional<std::uint32_t> l1_after_window;
  // L1(T_C) <= K
  bool small_at_t_c = false;
  // L1(T_C + ceil(n / D)) >= (1 - eps)(1 - beta) n
  bool giant_after_window = false;

  bool reached() const noexcept { return t_c && l1_after_window; }
  bool holds() const noexcept { return small_at_t_c && giant_after_window; }

  friend bool operator==(const WindowReport&, const WindowReport&) = default;
};

struct RunSummary {
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::uint32_t final_l1 = 0;
  std::vector<ThresholdTime> t_k;
  std::optional<WindowReport> window;
  std::optional<std::uint64_t> sqrt_to_half_steps;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunResult {
  TimeSeries series;
  AlphaTrace alpha_trace;  // empty unless half-restricted
  RunSummary summary;
};

// Executes one run. Points are recorded at step 0, every record_every steps,
// at every step where alpha changes, whenever L1 first reaches a power of
// two, sqrt(n) or n/2, and at the final step. Throws InvariantViolation if
// a checked property of the process fails.
RunResult run_process(const ProcessConfig& config);

// T_k = max { T : alpha_T < k }. k = 1 is rejected: alpha_T >= 1 always, so
// the set is empty.
std::optional<std::uint64_t> detect_t_k(const AlphaTrace& trace,
                                        std::uint32_t k);

// Runs the half-restricted process to T_C and ceil(n / D) steps beyond.
WindowReport explosive_window(ProcessConfig config);

// (first step with L1 >= n/2) - (first step with L1 >= sqrt(n)).
std::optional<std::uint64_t> sqrt_to_half_window(const TimeSeries& series);

// "<process tag>_<n>_<seed>.csv"
std::string run_file_name(const ProcessConfig& config);

struct EnsembleOptions {
  unsigned threads = 1;
  // When set, each run's series is written there under run_file_name().
  std::optional<std::filesystem::path> out_dir;
  std::vector<std::string> csv_comments;
};

struct EnsembleRow {
  std::uint64_t seed = 0;
  std::optional<RunSummary> summary;
  std::string error;  // set when the run failed
};

struct SampleStats {
  std::size_t count = 0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

struct EnsembleSummary {
  std::vector<EnsembleRow> rows;  // seed-list order
  std::optional<SampleStats> t_c;
  std::optional<SampleStats> l1_at_t_c;
  std::optional<SampleStats> l1_after_window;
  std::optional<SampleStats> final_l1;
};

std::optional<SampleStats> sample_stats(std::vector<double> values);

// One independent run per seed; base.seed is ignored.
EnsembleSummary run_ensemble(const ProcessConfig& base,
                             std::span<const std::uint64_t> seeds,
                             const EnsembleOptions& options = {});

inline constexpr const char* kEnsembleHeader =
    "seed,T_C,L1_at_TC,L1_after_window,window_sqrt_half";

std::string format_ensemble_csv(const EnsembleSummary& summary,
                                const std::vector<std::string>& comments = {});
void write_ensemble_csv(const EnsembleSummary& summary,
                        const std::filesystem::path& path,
                        const std::vector<std::string>& comments = {});

}  // namespace percolate
