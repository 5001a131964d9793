#include "percolate/cli/app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>

#include "percolate/beta.hpp"
#include "percolate/cli/expr.hpp"
#include "percolate/csv.hpp"
#include "percolate/errors.hpp"
#include "percolate/geomsum.hpp"
#include "percolate/harness.hpp"
#include "percolate/rng.hpp"

namespace percolate::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad flag values; reported with usage text and exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by verify-* when a check fails after the output has been written.
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kMaxVertices = std::numeric_limits<std::uint32_t>::max() - 1;

class Progress {
 public:
  void operator()(const char* fmt, auto... args) const {
    if (quiet) return;
    std::fprintf(stderr, fmt, args...);
    std::fputc('\n', stderr);
  }
  bool quiet = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string opt_str(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : "NOT_REACHED";
}

void require_writable_file(const fs::path& path) {
  if (path.empty()) throw UsageError("output path is empty");
  const fs::path parent = path.parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw UsageError("output directory does not exist: " + parent.string());
  }
  if (fs::is_directory(path)) throw UsageError("output path is a directory: " + path.string());
}

void require_output_dir(const fs::path& dir) {
  if (fs::exists(dir) && !fs::is_directory(dir)) {
    throw UsageError("--out-dir is not a directory: " + dir.string());
  }
}

// Flags shared by every subcommand that runs a process.
struct ProcessFlags {
  std::string process;
  std::string beta;
  std::string n;
  std::string steps;
  std::string record_every = "ceil(n/1000)";
  std::string track_k;
  std::string k_small;
  std::string chunk;
  std::string divisor;
  std::string eps;
  double stop_l1 = 0.0;
  bool strict = false;
  bool random_ties = false;
  std::string tie_break = "lex";

  CLI::Option* process_opt = nullptr;
  CLI::Option* stop_l1_opt = nullptr;
};

void add_process_flags(CLI::App* sub, ProcessFlags& f, bool with_process,
                       const std::string& default_steps) {
  if (with_process) {
    f.process_opt = sub->add_option("--process", f.process, "er | min-product | min-sum | half-restricted")
                        ->check(CLI::IsMember({"er", "min-product", "min-sum", "half-restricted"}));
  }
  sub->add_option("--beta", f.beta, "restricted fraction in (0, 1], e.g. 0.5 or 1/2");
  sub->add_option("--n", f.n, "number of vertices (expression)")->required();
  f.steps = default_steps;
  sub->add_option("--steps", f.steps, "maximum number of steps (expression in n)")
      ->capture_default_str();
  sub->add_option("--record-every", f.record_every, "record a point every this many steps")
      ->capture_default_str();
  sub->add_option("--track-k", f.track_k, "comma-separated k values whose T_k is reported");
  sub->add_option("--K", f.k_small, "window: bound on L1 at T_C [default ln(n)^2]");
  sub->add_option("--C", f.chunk, "window: chunk size [default max(2, ceil(lnlnln(n)))]");
  sub->add_option("--D", f.divisor, "window: divisor, window length ceil(n/D) [default max(1, ceil(ln(C)))]");
  sub->add_option("--eps", f.eps, "window: slack epsilon [default 0.1]");
  f.stop_l1_opt = sub->add_option("--stop-l1", f.stop_l1, "stop once L1 >= this fraction of n");
  sub->add_flag("--strict-achlioptas", f.strict, "draw Achlioptas candidates from non-edges only");
  sub->add_flag("--random-ties", f.random_ties, "break Achlioptas score ties with a coin flip");
  sub->add_option("--tie-break", f.tie_break, "order within a size class: lex | component-grouped")
      ->check(CLI::IsMember({"lex", "component-grouped"}))
      ->capture_default_str();
}

std::uint32_t evaluate_n(const std::string& text) {
  const std::uint64_t n = evaluate_count(text);
  if (n == 0 || n > kMaxVertices) {
    throw UsageError("--n must lie in [1, " + std::to_string(kMaxVertices) + "], got " + text);
  }
  return static_cast<std::uint32_t>(n);
}

ProcessConfig build_config(const ProcessFlags& f, const std::string& default_process,
                           bool force_window) {
  ProcessConfig c;
  const std::string process = f.process.empty() ? default_process : f.process;
  if (process.empty()) throw UsageError("--process is required");
  std::optional<Beta> beta;
  if (!f.beta.empty()) beta = Beta::parse(f.beta);
  c.kind = ProcessKind::parse(process, beta);
  c.n = evaluate_n(f.n);

  Variables vars{{"n", static_cast<double>(c.n)}};
  if (beta) vars["beta"] = beta->value();
  c.max_steps = evaluate_count(f.steps, vars);
  c.record_every = evaluate_count(f.record_every, vars);
  if (!f.track_k.empty()) {
    for (const auto& item : split_top_level(f.track_k)) {
      const std::uint64_t k = evaluate_count(item, vars);
      if (k > kMaxVertices) throw UsageError("--track-k value too large: " + item);
      c.tracked_k.push_back(static_cast<std::uint32_t>(k));
    }
  }

  const bool window = force_window || !f.k_small.empty() || !f.chunk.empty() ||
                      !f.divisor.empty() || !f.eps.empty();
  if (window) {
    WindowParams w;
    const std::uint64_t chunk =
        evaluate_count(f.chunk.empty() ? "max(2, ceil(lnlnln(n)))" : f.chunk, vars);
    if (chunk > kMaxVertices) throw UsageError("--C too large");
    w.chunk_size = static_cast<std::uint32_t>(chunk);
    vars["C"] = w.chunk_size;
    w.max_small_l1 = evaluate(f.k_small.empty() ? "ln(n)^2" : f.k_small, vars);
    w.divisor = evaluate(f.divisor.empty() ? "max(1, ceil(ln(C)))" : f.divisor, vars);
    w.epsilon = evaluate(f.eps.empty() ? "0.1" : f.eps, vars);
    c.window = w;
  }
  if (f.stop_l1_opt && f.stop_l1_opt->count() > 0) c.stop_l1_fraction = f.stop_l1;
  c.options.strict_achlioptas = f.strict;
  c.options.random_ties = f.random_ties;
  c.options.tie_break = f.tie_break == "component-grouped" ? TieBreak::kComponentGrouped
                                                            : TieBreak::kLabel;
  if (c.options.random_ties && !c.kind.is_achlioptas()) {
    throw UsageError("--random-ties applies to min-product and min-sum only");
  }
  c.validate();
  return c;
}

std::string summarize(const RunSummary& s, std::uint32_t n) {
  std::string out = "seed=" + std::to_string(s.seed) + " steps=" + std::to_string(s.steps) +
                    " L1=" + std::to_string(s.final_l1) + " (" + fmt(double(s.final_l1) / n) + " n)";
  for (const auto& tk : s.t_k) out += " T_" + std::to_string(tk.k) + "=" + opt_str(tk.step);
  if (s.window) {
    const auto& w = *s.window;
    out += " T_C=" + opt_str(w.t_c);
    if (w.t_c) {
      out += " L1(T_C)=" + std::to_string(w.l1_at_t_c);
      out += " L1(T_C+" + std::to_string(w.window_steps) + ")=" +
             (w.l1_after_window ? std::to_string(*w.l1_after_window) : "NOT_REACHED");
      out += std::string(" small=") + (w.small_at_t_c ? "yes" : "no") +
             " giant=" + (w.giant_after_window ? "yes" : "no");
    }
  }
  out += " sqrt_to_half=" + opt_str(s.sqrt_to_half_steps);
  return out;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seeds[i]);
  }
  return out;
}

int report_ensemble(const EnsembleSummary& e, std::uint32_t n, const Progress& log) {
  int failures = 0;
  for (const auto& row : e.rows) {
    if (row.summary) {
      log("  %s", summarize(*row.summary, n).c_str());
    } else {
      log("  seed=%llu FAILED: %s", static_cast<unsigned long long>(row.seed), row.error.c_str());
      ++failures;
    }
  }
  auto stats = [&](const char* name, const std::optional<SampleStats>& s) {
    if (s) log("  %s: min=%s median=%s max=%s over %zu runs", name, fmt(s->min).c_str(),
               fmt(s->median).c_str(), fmt(s->max).c_str(), s->count);
  };
  stats("T_C", e.t_c);
  stats("L1(T_C)", e.l1_at_t_c);
  stats("L1 after window", e.l1_after_window);
  stats("final L1", e.final_l1);
  return failures;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  auto to_u64 = [&](std::string_view s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw UsageError("bad seed list \"" + std::string(text) + "\"");
    }
    try {
      return std::stoull(std::string(s));
    } catch (const std::out_of_range&) {
      throw UsageError("seed out of range in \"" + std::string(text) + "\"");
    }
  };
  std::vector<std::uint64_t> out;
  std::set<std::uint64_t> seen;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, comma - start);
    const std::size_t dash = item.find('-');
    std::uint64_t lo, hi;
    if (dash == std::string_view::npos) {
      lo = hi = to_u64(item);
    } else {
      lo = to_u64(item.substr(0, dash));
      hi = to_u64(item.substr(dash + 1));
      if (lo > hi) throw UsageError("empty seed range \"" + std::string(item) + "\"");
      if (hi - lo >= 1'000'000) throw UsageError("seed range too long: " + std::string(item));
    }
    for (std::uint64_t s = lo;; ++s) {
      if (!seen.insert(s).second) {
        throw UsageError("duplicate seed " + std::to_string(s));
      }
      out.push_back(s);
      if (s == hi) break;
    }
    start = comma + 1;
  }
  return out;
}

std::string echo_invocation(int argc, const char* const* argv) {
  std::string out = "percolate";
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--quiet") continue;
    if (arg == "--threads") {
      ++i;
      continue;
    }
    if (arg.rfind("--threads=", 0) == 0) continue;
    out += ' ';
    if (arg.find_first_of(" \t\"'") != std::string_view::npos) {
      out += '\'';
      out += arg;
      out += '\'';
    } else {
      out += arg;
    }
  }
  return out;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Simulates half-restricted and related random graph processes."};
  app.name("percolate");
  app.require_subcommand(1);
  app.fallthrough();
  Progress log;
  app.add_flag("--quiet", log.quiet, "suppress progress output");

  const std::string invocation = echo_invocation(argc, argv);
  std::function<void()> action;

  // run
  ProcessFlags run_flags;
  std::uint64_t run_seed = 1;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Run one process and write its time series CSV");
  add_process_flags(run, run_flags, true, "n");
  run->add_option("--seed", run_seed, "random seed")->capture_default_str();
  run->add_option("--out", run_out, "output CSV path")->required();
  run->callback([&] {
    action = [&] {
      ProcessConfig c = build_config(run_flags, "", false);
      c.seed = run_seed;
      require_writable_file(run_out);
      log("run: %s", c.describe().c_str());
      const auto t0 = std::chrono::steady_clock::now();
      const RunResult r = run_process(c);
      write_csv(r.series, run_out, {invocation, c.describe()});
      log("  %s", summarize(r.summary, c.n).c_str());
      log("  %.2f s, %zu points written to %s", seconds_since(t0), r.series.points.size(),
          run_out.c_str());
    };
  });

  // ensemble
  ProcessFlags ens_flags;
  std::string ens_seeds = "1-10";
  std::string ens_out;
  std::string ens_dir;
  unsigned ens_threads = 1;
  auto* ens = app.add_subcommand("ensemble", "Run one process over many seeds");
  add_process_flags(ens, ens_flags, true, "n");
  ens->add_option("--seeds", ens_seeds, "seed list, e.g. 1,2,3 or 1-10")->capture_default_str();
  ens->add_option("--out", ens_out, "summary CSV path")->required();
  ens->add_option("--out-dir", ens_dir, "also write one series CSV per seed here");
  ens->add_option("--threads", ens_threads, "worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  ens->callback([&] {
    action = [&] {
      const ProcessConfig c = build_config(ens_flags, "", false);
      const auto seeds = parse_seed_list(ens_seeds);
      require_writable_file(ens_out);
      EnsembleOptions opts;
      opts.threads = ens_threads;
      opts.csv_comments = {invocation};
      if (!ens_dir.empty()) {
        require_output_dir(ens_dir);
        fs::create_directories(ens_dir);
        opts.out_dir = ens_dir;
      }
      log("ensemble: %s over seeds %s", c.kind.tag().c_str(), join_seeds(seeds).c_str());
      const auto t0 = std::chrono::steady_clock::now();
      const EnsembleSummary e = run_ensemble(c, seeds, opts);
      write_ensemble_csv(e, ens_out, {invocation});
      const int failures = report_ensemble(e, c.n, log);
      log("  %.2f s", seconds_since(t0));
      if (failures) throw std::runtime_error(std::to_string(failures) + " run(s) failed");
    };
  });

  // window
  ProcessFlags win_flags;
  win_flags.beta = "0.5";
  std::string win_seeds = "1-10";
  std::string win_out;
  unsigned win_threads = 1;
  auto* win = app.add_subcommand(
      "window", "Measure L1 at T_C and ceil(n/D) steps later for the half-restricted process");
  add_process_flags(win, win_flags, false, "6*n");
  win->get_option("--beta")->default_str("0.5");
  win->add_option("--seeds", win_seeds, "seed list, e.g. 1,2,3 or 1-10")->capture_default_str();
  win->add_option("--out", win_out, "summary CSV path");
  win->add_option("--threads", win_threads, "worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  win->callback([&] {
    action = [&] {
      ProcessConfig c = build_config(win_flags, "half-restricted", true);
      c.stop_after_window = true;
      const auto seeds = parse_seed_list(win_seeds);
      if (!win_out.empty()) require_writable_file(win_out);
      const auto& w = *c.window;
      log("window: beta=%s n=%u K=%s C=%u D=%s eps=%s steps<=%llu",
          c.kind.beta()->to_string().c_str(), c.n, fmt(w.max_small_l1).c_str(), w.chunk_size,
          fmt(w.divisor).c_str(), fmt(w.epsilon).c_str(),
          static_cast<unsigned long long>(c.max_steps));
      const auto t0 = std::chrono::steady_clock::now();
      EnsembleOptions opts;
      opts.threads = win_threads;
      const EnsembleSummary e = run_ensemble(c, seeds, opts);
      if (!win_out.empty()) write_ensemble_csv(e, win_out, {invocation, c.describe()});
      const int failures = report_ensemble(e, c.n, log);
      std::size_t holds = 0;
      for (const auto& row : e.rows) {
        if (row.summary && row.summary->window && row.summary->window->holds()) ++holds;
      }
      log("  both observations hold in %zu of %zu seeds (%.2f s)", holds, e.rows.size(),
          seconds_since(t0));
      if (failures) throw std::runtime_error(std::to_string(failures) + " run(s) failed");
    };
  });

  // emit-figure-data
  std::string fig_n;
  std::string fig_seeds = "1";
  std::string fig_steps = "n";
  std::string fig_record = "ceil(n/1000)";
  std::string fig_dir = ".";
  unsigned fig_threads = 1;
  auto* fig = app.add_subcommand(
      "emit-figure-data",
      "Write L1 series for er, min-product, min-sum and half-restricted 0.25/0.5/0.9");
  fig->add_option("--n", fig_n, "number of vertices (expression)")->required();
  fig->add_option("--seeds", fig_seeds, "seed list")->capture_default_str();
  fig->add_option("--steps", fig_steps, "steps per run (expression in n)")->capture_default_str();
  fig->add_option("--record-every", fig_record, "record a point every this many steps")
      ->capture_default_str();
  fig->add_option("--out-dir", fig_dir, "output directory")->capture_default_str();
  fig->add_option("--threads", fig_threads, "worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  fig->callback([&] {
    action = [&] {
      const std::uint32_t n = evaluate_n(fig_n);
      const Variables vars{{"n", static_cast<double>(n)}};
      const auto seeds = parse_seed_list(fig_seeds);
      const std::vector<ProcessKind> kinds{
          ProcessKind::erdos_renyi(),
          ProcessKind::achlioptas(AchlioptasRule::kMinProduct),
          ProcessKind::achlioptas(AchlioptasRule::kMinSum),
          ProcessKind::half_restricted(Beta::parse("0.25")),
          ProcessKind::half_restricted(Beta::parse("0.5")),
          ProcessKind::half_restricted(Beta::parse("0.9")),
      };
      std::vector<ProcessConfig> configs;
      for (const auto& kind : kinds) {
        ProcessConfig c;
        c.kind = kind;
        c.n = n;
        c.max_steps = evaluate_count(fig_steps, vars);
        c.record_every = evaluate_count(fig_record, vars);
        c.validate();
        configs.push_back(c);
      }
      require_output_dir(fig_dir);
      fs::create_directories(fig_dir);
      EnsembleOptions opts;
      opts.threads = fig_threads;
      opts.out_dir = fig_dir;
      opts.csv_comments = {invocation};
      int failures = 0;
      for (const auto& c : configs) {
        const auto t0 = std::chrono::steady_clock::now();
        const EnsembleSummary e = run_ensemble(c, seeds, opts);
        for (const auto& row : e.rows) {
          ProcessConfig named = c;
          named.seed = row.seed;
          if (row.summary) {
            log("%s: L1/n=%s -> %s", c.kind.tag().c_str(),
                fmt(double(row.summary->final_l1) / n).c_str(),
                (fs::path(fig_dir) / run_file_name(named)).string().c_str());
          } else {
            log("%s seed=%llu FAILED: %s", c.kind.tag().c_str(),
                static_cast<unsigned long long>(row.seed), row.error.c_str());
            ++failures;
          }
        }
        log("  %.2f s", seconds_since(t0));
      }
      if (failures) throw std::runtime_error(std::to_string(failures) + " run(s) failed");
    };
  });

  // verify-lemma1
  std::string l1_coupons = "10^4";
  std::string l1_k = "10^3";
  std::string l1_s = "floor(N*ln(k)/4)";
  std::string l1_trials = "10^4";
  std::uint64_t l1_seed = 1;
  std::string l1_mode = "geometric";
  std::string l1_out;
  auto* lem = app.add_subcommand(
      "verify-lemma1",
      "Estimate P[X(N-k, N-2) <= s] and check it against exp(-k^0.99) plus the CI half-width");
  lem->add_option("--N", l1_coupons, "coupon universe size (expression)")->capture_default_str();
  lem->add_option("--k", l1_k, "comma-separated k values (expressions in N)")->capture_default_str();
  lem->add_option("--s", l1_s, "comma-separated thresholds (expressions in N, k)")
      ->capture_default_str();
  lem->add_option("--trials", l1_trials, "Monte Carlo trials per point")->capture_default_str();
  lem->add_option("--seed", l1_seed, "random seed")->capture_default_str();
  lem->add_option("--mode", l1_mode, "sampler: geometric | coupon")
      ->check(CLI::IsMember({"geometric", "coupon"}))
      ->capture_default_str();
  lem->add_option("--out", l1_out, "result CSV path");
  lem->callback([&] {
    action = [&] {
      const std::uint64_t coupons = evaluate_count(l1_coupons);
      const std::uint64_t trials = evaluate_count(l1_trials);
      if (trials == 0) throw UsageError("--trials must be >= 1");
      struct Point {
        std::uint64_t k, s;
      };
      std::vector<Point> grid;
      for (const auto& kt : split_top_level(l1_k)) {
        Variables vars{{"N", double(coupons)}};
        const std::uint64_t k = evaluate_count(kt, vars);
        if (k < 2 || k >= coupons) {
          throw UsageError("--k must satisfy 2 <= k < N, got " + std::to_string(k));
        }
        vars["k"] = double(k);
        for (const auto& st : split_top_level(l1_s)) grid.push_back({k, evaluate_count(st, vars)});
      }
      if (!l1_out.empty()) require_writable_file(l1_out);
      const SampleMode mode =
          l1_mode == "coupon" ? SampleMode::kCouponDraws : SampleMode::kGeometricSum;
      Rng rng(l1_seed);
      std::string csv = "# " + invocation + "\nN,k,s,trials,hits,p_hat,ci_halfwidth,bound,pass\n";
      int failed = 0;
      for (const auto& p : grid) {
        const TailEstimate est = lemma1_tail_estimate(coupons, p.k, p.s, trials, rng, mode);
        const double bound = lemma1_bound(double(p.k));
        const bool pass = est.p_hat <= bound + est.ci_halfwidth;
        if (!pass) ++failed;
        log("N=%llu k=%llu s=%llu: p_hat=%s (+/- %s) bound=%s %s",
            static_cast<unsigned long long>(coupons), static_cast<unsigned long long>(p.k),
            static_cast<unsigned long long>(p.s), fmt(est.p_hat).c_str(),
            fmt(est.ci_halfwidth).c_str(), fmt(bound).c_str(), pass ? "ok" : "VIOLATED");
        csv += std::to_string(coupons) + ',' + std::to_string(p.k) + ',' + std::to_string(p.s) +
               ',' + std::to_string(trials) + ',' + std::to_string(est.hits) + ',' +
               fmt(est.p_hat) + ',' + fmt(est.ci_halfwidth) + ',' + fmt(bound) + ',' +
               (pass ? "1" : "0") + '\n';
      }
      if (!l1_out.empty()) write_file_atomically(l1_out, csv);
      if (failed) throw CheckFailed(std::to_string(failed) + " point(s) exceed the bound");
    };
  });

  // verify-eq1
  std::string eq_coupons;
  std::string eq_first;
  std::string eq_last;
  std::uint64_t eq_random = 0;
  std::string eq_max_coupons = "10^4";
  std::string eq_max_terms = "2000";
  std::string eq_trials = "10^5";
  std::uint64_t eq_seed = 1;
  std::string eq_mode = "geometric";
  std::string eq_out;
  auto* eq = app.add_subcommand(
      "verify-eq1",
      "Compare the simulated mean of X(a, b) with N(H_{N-a} - H_{N-b-1}) within 3 standard errors");
  eq->add_option("--N", eq_coupons, "coupon universe size (expression)");
  eq->add_option("--a", eq_first, "first held count a (expression in N)");
  eq->add_option("--b", eq_last, "last held count b (expression in N)");
  eq->add_option("--random-specs", eq_random, "check this many random specs instead of --N/--a/--b");
  eq->add_option("--max-N", eq_max_coupons, "random specs: largest N")->capture_default_str();
  eq->add_option("--max-terms", eq_max_terms, "random specs: largest b - a + 1")
      ->capture_default_str();
  eq->add_option("--trials", eq_trials, "Monte Carlo trials per spec")->capture_default_str();
  eq->add_option("--seed", eq_seed, "random seed")->capture_default_str();
  eq->add_option("--mode", eq_mode, "sampler: geometric | coupon")
      ->check(CLI::IsMember({"geometric", "coupon"}))
      ->capture_default_str();
  eq->add_option("--out", eq_out, "result CSV path");
  eq->callback([&] {
    action = [&] {
      const std::uint64_t trials = evaluate_count(eq_trials);
      if (trials < 2) throw UsageError("--trials must be >= 2");
      Rng rng(eq_seed);
      std::vector<GeomSumSpec> specs;
      if (eq_random > 0) {
        if (!eq_coupons.empty() || !eq_first.empty() || !eq_last.empty()) {
          throw UsageError("--random-specs excludes --N/--a/--b");
        }
        const std::uint64_t max_n = evaluate_count(eq_max_coupons);
        const std::uint64_t max_terms = evaluate_count(eq_max_terms);
        if (max_n < 2) throw UsageError("--max-N must be >= 2");
        if (max_terms < 1) throw UsageError("--max-terms must be >= 1");
        for (std::uint64_t i = 0; i < eq_random; ++i) {
          const std::uint64_t n = 2 + rng.uniform_below(max_n - 1);
          const std::uint64_t b = rng.uniform_below(n);
          const std::uint64_t lowest = b + 1 > max_terms ? b + 1 - max_terms : 0;
          const std::uint64_t a = lowest + rng.uniform_below(b - lowest + 1);
          specs.push_back({n, a, b});
        }
      } else {
        if (eq_coupons.empty() || eq_first.empty() || eq_last.empty()) {
          throw UsageError("give --N, --a and --b, or --random-specs");
        }
        const std::uint64_t n = evaluate_count(eq_coupons);
        const Variables vars{{"N", double(n)}};
        specs.push_back({n, evaluate_count(eq_first, vars), evaluate_count(eq_last, vars)});
      }
      for (const auto& s : specs) s.validate();
      if (!eq_out.empty()) require_writable_file(eq_out);
      const SampleMode mode =
          eq_mode == "coupon" ? SampleMode::kCouponDraws : SampleMode::kGeometricSum;

      std::string csv = "# " + invocation + "\nN,a,b,trials,mean,expected,std_error,z,pass\n";
      int failed = 0;
      detail::CouponDrawer drawer;
      for (const auto& spec : specs) {
        // Welford accumulation of mean and variance.
        double mean = 0.0, m2 = 0.0;
        for (std::uint64_t t = 1; t <= trials; ++t) {
          const double x = mode == SampleMode::kGeometricSum
                               ? double(simulate_partial_collect(spec, rng, mode))
                               : double(drawer.run(spec, rng, ~std::uint64_t{0}));
          const double d = x - mean;
          mean += d / double(t);
          m2 += d * (x - mean);
        }
        const double se = std::sqrt(m2 / double(trials - 1) / double(trials));
        const double expected = expected_partial_collect(spec);
        const double z = se > 0 ? (mean - expected) / se : (mean == expected ? 0.0 : INFINITY);
        const bool pass = std::abs(z) <= 3.0;
        if (!pass) ++failed;
        log("N=%llu a=%llu b=%llu: mean=%s expected=%s se=%s z=%s %s",
            static_cast<unsigned long long>(spec.coupons),
            static_cast<unsigned long long>(spec.first),
            static_cast<unsigned long long>(spec.last), fmt(mean).c_str(), fmt(expected).c_str(),
            fmt(se).c_str(), fmt(z).c_str(), pass ? "ok" : "OUTSIDE 3 SE");
        csv += std::to_string(spec.coupons) + ',' + std::to_string(spec.first) + ',' +
               std::to_string(spec.last) + ',' + std::to_string(trials) + ',' + fmt(mean) + ',' +
               fmt(expected) + ',' + fmt(se) + ',' + fmt(z) + ',' + (pass ? "1" : "0") + '\n';
      }
      if (!eq_out.empty()) write_file_atomically(eq_out, csv);
      if (failed) throw CheckFailed(std::to_string(failed) + " spec(s) outside 3 standard errors");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return kExitOk;
    }
    std::fprintf(stderr, "error: %s\n\n", e.what());
    const auto subs = app.get_subcommands();
    std::fputs((subs.empty() ? app.help() : subs.front()->help()).c_str(), stderr);
    return kExitUsage;
  }

  const CLI::App* selected = app.get_subcommands().front();
  try {
    action();
  } catch (const CheckFailed& e) {
    std::fprintf(stderr, "check failed: %s\n", e.what());
    return kExitCheckFailed;
  } catch (const InvariantViolation& e) {
    std::fprintf(stderr, "invariant violated: %s\n", e.what());
    return kExitRuntime;
  } catch (const CsvError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n\n%s", e.what(), selected->help().c_str());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace percolate::cli
