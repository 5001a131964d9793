#include "percolate/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include "percolate/csv.hpp"
#include "percolate/errors.hpp"
#include "percolate/rng.hpp"

namespace percolate {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::uint64_t ceil_div_real(std::uint32_t n, double divisor) {
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) / divisor));
}

// Milestones that force a recorded point when L1 first reaches them.
std::vector<std::uint32_t> l1_milestones(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t p = 2; p <= n; p *= 2) out.push_back(static_cast<std::uint32_t>(p));
  auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(n)));
  while (std::uint64_t{root} * root < n) ++root;
  while (root > 0 && std::uint64_t{root - 1} * (root - 1) >= n) --root;
  out.push_back(root);
  out.push_back((n + 1) / 2);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool reaches_sqrt(std::uint64_t l1, std::uint64_t n) { return l1 * l1 >= n; }
bool reaches_half(std::uint64_t l1, std::uint64_t n) { return 2 * l1 >= n; }

}  // namespace

void ProcessConfig::validate() const {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  if (max_steps == 0) throw std::invalid_argument("max_steps must be >= 1");
  if (record_every == 0) throw std::invalid_argument("record_every must be >= 1");
  if (!std::is_sorted(tracked_k.begin(), tracked_k.end())) {
    throw std::invalid_argument("tracked_k must be sorted ascending");
  }
  for (const auto k : tracked_k) {
    if (k < 2) throw std::invalid_argument("tracked k must be >= 2 (T_1 is undefined)");
  }
  const bool restricted = kind.type() == ProcessType::kHalfRestricted;
  if (!tracked_k.empty() && !restricted) {
    throw std::invalid_argument("tracked_k requires the half-restricted process");
  }
  if (restricted && kind.beta()->restricted_size(n) == 0) {
    throw std::invalid_argument("floor(beta * n) = 0: restricted set is empty");
  }
  if (window) {
    if (!restricted) {
      throw std::invalid_argument("window measurement requires the half-restricted process");
    }
    if (window->chunk_size < 2) throw std::invalid_argument("window C must be >= 2");
    if (!(window->divisor >= 1.0)) throw std::invalid_argument("window D must be >= 1");
    if (!(window->epsilon > 0.0 && window->epsilon < 1.0)) {
      throw std::invalid_argument("window eps must lie in (0, 1)");
    }
    if (!(window->max_small_l1 > 0.0)) throw std::invalid_argument("window K must be > 0");
  }
  if (stop_after_window && !window) {
    throw std::invalid_argument("stop_after_window requires window parameters");
  }
  if (stop_l1_fraction && !(*stop_l1_fraction > 0.0 && *stop_l1_fraction <= 1.0)) {
    throw std::invalid_argument("stop L1 fraction must lie in (0, 1]");
  }
  if (options.strict_achlioptas && !kind.is_achlioptas()) {
    throw std::invalid_argument("strict candidate mode applies to Achlioptas rules only");
  }
  if (options.tie_break != TieBreak::kLabel && !restricted) {
    throw std::invalid_argument("tie-break mode applies to the half-restricted process only");
  }
}

std::string ProcessConfig::describe() const {
  std::string out = "process=" + kind.name();
  if (kind.beta()) out += " beta=" + kind.beta()->to_string();
  out += " n=" + std::to_string(n) + " steps=" + std::to_string(max_steps) +
         " seed=" + std::to_string(seed) +
         " record_every=" + std::to_string(record_every);
  if (!tracked_k.empty()) {
    out += " track_k=";
    for (std::size_t i = 0; i < tracked_k.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(tracked_k[i]);
    }
  }
  if (window) {
    out += " K=" + fmt_double(window->max_small_l1) +
           " C=" + std::to_string(window->chunk_size) +
           " D=" + fmt_double(window->divisor) +
           " eps=" + fmt_double(window->epsilon);
  }
  if (options.tie_break == TieBreak::kComponentGrouped) out += " tie_break=component-grouped";
  if (options.strict_achlioptas) out += " strict_achlioptas=1";
  if (options.random_ties) out += " random_ties=1";
  if (stop_l1_fraction) out += " stop_l1=" + fmt_double(*stop_l1_fraction);
  return out;
}

RunResult run_process(const ProcessConfig& config) {
  config.validate();
  Process proc(config.kind, config.n, config.options);
  Rng rng(config.seed);
  const Partition& part = proc.partition();
  const std::uint32_t n = config.n;
  const bool restricted = config.kind.type() == ProcessType::kHalfRestricted;

  RunResult out;
  out.series.n = n;
  out.summary.seed = config.seed;

  auto record = [&](std::uint64_t step) {
    TimeSeriesPoint p{step, part.largest_size(), proc.alpha(),
                      part.component_count(), part.edge_count()};
    if (p.l1 > n || p.component_count + p.edge_count != n) {
      throw InvariantViolation("inconsistent partition counts at step " +
                               std::to_string(step));
    }
    out.series.points.push_back(p);
  };
  record(0);

  for (const auto k : config.tracked_k) out.summary.t_k.push_back({k, std::nullopt});
  std::size_t next_k = 0;

  std::optional<WindowReport> window;
  std::uint64_t window_end = 0;
  if (config.window) {
    window.emplace();
    window->params = *config.window;
    window->window_steps = ceil_div_real(n, config.window->divisor);
  }
  const std::uint32_t chunk_c = config.window ? config.window->chunk_size : 0;

  // alpha_T for the step about to run, and bookkeeping driven by it.
  std::uint32_t alpha_now = proc.alpha();
  auto observe_alpha = [&](std::uint64_t t) {
    while (next_k < out.summary.t_k.size() && alpha_now >= out.summary.t_k[next_k].k) {
      out.summary.t_k[next_k++].step = t - 1;
    }
    if (window && !window->t_c && alpha_now >= window->params.chunk_size) {
      window->t_c = t - 1;
      window->l1_at_t_c = part.largest_size();
      window_end = t - 1 + window->window_steps;
    }
  };
  if (restricted) out.alpha_trace.push_back({1, alpha_now});

  const auto milestones = l1_milestones(n);
  std::size_t next_milestone = 0;
  while (next_milestone < milestones.size() && milestones[next_milestone] <= 1) ++next_milestone;
  std::optional<std::uint64_t> first_sqrt;
  std::optional<std::uint64_t> first_half;
  if (reaches_sqrt(1, n)) first_sqrt = 0;
  if (reaches_half(1, n)) first_half = 0;

  std::uint32_t prev_l1 = part.largest_size();
  std::uint64_t t = 0;
  while (t < config.max_steps) {
    ++t;
    if (restricted) observe_alpha(t);

    const StepRecord rec = proc.step(rng);

    if (restricted && rec.merged) {
      const std::uint32_t smaller = std::min(rec.merge.size_a, rec.merge.size_b);
      if (smaller > alpha_now) {
        throw InvariantViolation("step " + std::to_string(t) +
                                 " merged a component of size " +
                                 std::to_string(smaller) + " > alpha = " +
                                 std::to_string(alpha_now) +
                                 " on the restricted side");
      }
      if (chunk_c != 0 && alpha_now < chunk_c && smaller >= chunk_c) {
        throw InvariantViolation("step " + std::to_string(t) +
                                 " merged two components of size >= C = " +
                                 std::to_string(chunk_c) + " before T_C");
      }
    }

    const std::uint32_t l1 = part.largest_size();
    if (l1 < prev_l1) throw InvariantViolation("L1 decreased at step " + std::to_string(t));
    prev_l1 = l1;
    const std::uint32_t alpha_next = proc.alpha();
    if (restricted && alpha_next < alpha_now) {
      throw InvariantViolation("alpha decreased at step " + std::to_string(t));
    }

    bool keep = t % config.record_every == 0 || alpha_next != alpha_now;
    while (next_milestone < milestones.size() && l1 >= milestones[next_milestone]) {
      keep = true;
      ++next_milestone;
    }
    if (!first_sqrt && reaches_sqrt(l1, n)) first_sqrt = t;
    if (!first_half && reaches_half(l1, n)) first_half = t;
    if (restricted && alpha_next != alpha_now) out.alpha_trace.push_back({t + 1, alpha_next});

    bool stop = false;
    if (window && window->t_c && t == window_end) {
      window->l1_after_window = l1;
      keep = true;
      stop = config.stop_after_window;
    }
    if (config.stop_l1_fraction &&
        static_cast<double>(l1) >= *config.stop_l1_fraction * static_cast<double>(n)) {
      stop = true;
    }
    if (keep || stop || t == config.max_steps) record(t);
    alpha_now = alpha_next;
    if (stop) break;
  }
  // Thresholds crossed by the final step are resolved from alpha_{t+1}.
  if (restricted) observe_alpha(t + 1);

  out.summary.steps = t;
  out.summary.final_l1 = part.largest_size();
  if (first_sqrt && first_half) out.summary.sqrt_to_half_steps = *first_half - *first_sqrt;
  if (window) {
    const double beta = config.kind.beta()->value();
    window->small_at_t_c =
        window->t_c && static_cast<double>(window->l1_at_t_c) <= window->params.max_small_l1;
    window->giant_after_window =
        window->l1_after_window &&
        static_cast<double>(*window->l1_after_window) >=
            (1.0 - window->params.epsilon) * (1.0 - beta) * static_cast<double>(n);
    out.summary.window = window;
  }
  return out;
}

std::optional<std::uint64_t> detect_t_k(const AlphaTrace& trace, std::uint32_t k) {
  if (k <= 1) {
    throw std::invalid_argument("T_1 is undefined: alpha_T >= 1 for every T");
  }
  for (const auto& change : trace) {
    if (change.alpha >= k) return change.step - 1;
  }
  return std::nullopt;
}

WindowReport explosive_window(ProcessConfig config) {
  if (config.kind.type() != ProcessType::kHalfRestricted) {
    throw std::invalid_argument("explosive window needs the half-restricted process");
  }
  if (!config.window) throw std::invalid_argument("explosive window needs window parameters");
  config.stop_after_window = true;
  return *run_process(config).summary.window;
}

std::optional<std::uint64_t> sqrt_to_half_window(const TimeSeries& series) {
  std::optional<std::uint64_t> first_sqrt;
  for (const auto& p : series.points) {
    if (!first_sqrt && reaches_sqrt(p.l1, series.n)) first_sqrt = p.step;
    if (first_sqrt && reaches_half(p.l1, series.n)) return p.step - *first_sqrt;
  }
  return std::nullopt;
}

std::string run_file_name(const ProcessConfig& config) {
  return config.kind.tag() + "_" + std::to_string(config.n) + "_" +
         std::to_string(config.seed) + ".csv";
}

std::optional<SampleStats> sample_stats(std::vector<double> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  SampleStats s;
  s.count = values.size();
  s.min = values.front();
  s.max = values.back();
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

EnsembleSummary run_ensemble(const ProcessConfig& base,
                             std::span<const std::uint64_t> seeds,
                             const EnsembleOptions& options) {
  if (seeds.empty()) throw std::invalid_argument("ensemble needs at least one seed");
  base.validate();

  EnsembleSummary summary;
  summary.rows.resize(seeds.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      EnsembleRow& row = summary.rows[i];
      row.seed = seeds[i];
      try {
        ProcessConfig config = base;
        config.seed = seeds[i];
        RunResult result = run_process(config);
        if (options.out_dir) {
          std::vector<std::string> comments = options.csv_comments;
          comments.push_back(config.describe());
          write_csv(result.series, *options.out_dir / run_file_name(config), comments);
        }
        row.summary = std::move(result.summary);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(seeds.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<double> t_c, l1_tc, l1_after, final_l1;
  for (const auto& row : summary.rows) {
    if (!row.summary) continue;
    final_l1.push_back(row.summary->final_l1);
    if (const auto& w = row.summary->window; w && w->t_c) {
      t_c.push_back(static_cast<double>(*w->t_c));
      l1_tc.push_back(w->l1_at_t_c);
      if (w->l1_after_window) l1_after.push_back(*w->l1_after_window);
    }
  }
  summary.t_c = sample_stats(std::move(t_c));
  summary.l1_at_t_c = sample_stats(std::move(l1_tc));
  summary.l1_after_window = sample_stats(std::move(l1_after));
  summary.final_l1 = sample_stats(std::move(final_l1));
  return summary;
}

std::string format_ensemble_csv(const EnsembleSummary& summary,
                                const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += kEnsembleHeader;
  out += '\n';
  auto opt = [](const auto& v) { return v ? std::to_string(*v) : std::string("NA"); };
  for (const auto& row : summary.rows) {
    out += std::to_string(row.seed);
    if (!row.summary) {
      out += ",NA,NA,NA,NA\n";
      continue;
    }
    const auto& w = row.summary->window;
    if (w && w->t_c) {
      out += "," + std::to_string(*w->t_c) + "," + std::to_string(w->l1_at_t_c) + "," +
             opt(w->l1_after_window);
    } else {
      out += ",NA,NA,NA";
    }
    out += "," + opt(row.summary->sqrt_to_half_steps) + "\n";
  }
  return out;
}

void write_ensemble_csv(const EnsembleSummary& summary, const std::filesystem::path& path,
                        const std::vector<std::string>& comments) {
  write_file_atomically(path, format_ensemble_csv(summary, comments));
}

}  // namespace percolate
