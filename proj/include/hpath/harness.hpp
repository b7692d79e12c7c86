#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpath/oracle.hpp"
#include "hpath/sat.hpp"
#include "hpath/solver.hpp"

namespace hpath {

/// Largest per-stage expansion count the unified ledger allows on an
/// n-vertex solve: every expanded state but the root was enqueued by
/// consuming a distinct vertex pair.
inline std::int64_t unified_stage_bound(std::int64_t n) { return n * (n - 1) / 2 + 1; }

/// Solved-graph size for the bound check (any-endpoints adds two hubs).
inline int solved_size(int n, const SolverConfig& cfg) {
  return cfg.mode == EndpointMode::kAny ? n + 2 : n;
}

/// Splits `count` tasks over `jobs` threads; fn(i) writes only to slot i.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

enum class SweepKind : std::uint8_t { kExhaustive, kSampled };

struct SweepOptions {
  SweepKind kind = SweepKind::kExhaustive;
  int min_n = 1;
  int max_n = 5;
  int degree_cap = 4;
  std::uint64_t seed = 1;
  int count = 100;  // sampled instances
  SolverConfig solver{.mode = EndpointMode::kAny};
  std::optional<std::filesystem::path> export_dir;
  bool minimize = true;
  int jobs = 1;
};

struct SizeAggregate {
  std::int64_t instances = 0;
  std::int64_t agree = 0;
  std::int64_t incomplete = 0;
  std::int64_t budget_exceeded = 0;
  std::int64_t unsound = 0;
  std::int64_t errors = 0;
  std::int64_t total_expansions = 0;
  std::int64_t max_expansions = 0;
  std::int64_t max_stage_expansions = 0;
  double total_seconds = 0.0;
  double max_seconds = 0.0;
};

struct SweepReport {
  std::int64_t attempted = 0;
  std::int64_t agree = 0;
  std::int64_t incomplete = 0;
  std::int64_t budget_exceeded = 0;
  std::int64_t unsound = 0;
  std::int64_t errors = 0;
  std::int64_t ledger_bound_violations = 0;
  std::int64_t oracle_positive = 0;
  std::vector<std::string> counterexamples;
  std::map<int, SizeAggregate> per_n;
  std::vector<nlohmann::json> records;

  /// Agreement over instances that reached a verdict.
  double agreement_rate() const;
  nlohmann::json summary() const;
  /// Instance records then the summary, one JSON object per line.
  /// Deterministic for fixed options.
  std::string render() const;
  /// Wall-time aggregates per n; not reproducible by nature.
  std::string render_timing() const;
};

/// Exhaustive: every connected graph (up to isomorphism) with
/// min_n <= n <= max_n and maximum degree <= degree_cap. Sampled: `count`
/// random connected graphs on max_n vertices with degrees in [3, degree_cap].
/// Each instance is solved and cross-checked; SolverIncomplete instances
/// are exported and minimized when export_dir is set.
SweepReport run_sweep(const SweepOptions& opts);

struct HuntOptions {
  SweepOptions sweep{.kind = SweepKind::kSampled, .max_n = 10};
  int rounds = 10;
  /// Stop after this many counterexamples (0 = never stop early).
  int stop_after = 1;
};

/// Repeated sampled sweeps with fresh seeds until a counterexample shows up
/// or the rounds run out.
SweepReport run_hunt(const HuntOptions& opts);

struct BenchOptions {
  std::vector<int> sizes{50, 100, 200, 400};
  int count = 10;
  std::uint64_t seed = 1;
  SolverConfig solver{.trace = false};
  int jobs = 1;
};

struct BenchRow {
  int n = 0;
  int index = 0;
  std::uint64_t instance_seed = 0;
  ResultKind kind = ResultKind::kNoPathClaim;
  bool sound = true;
  std::int64_t expansions = 0;
  std::int64_t stages = 0;
  std::int64_t max_stage_expansions = 0;
  std::int64_t virtual_edges = 0;
  double seconds = 0.0;
  bool within_bound = true;
};

struct BenchSize {
  int n = 0;
  int instances = 0;
  int successes = 0;
  double mean_expansions = 0.0;
  std::int64_t max_expansions = 0;
  double mean_seconds = 0.0;
  double max_seconds = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchSize> sizes;
  double expansion_slope = 0.0;  // log(mean expansions) vs log(n)
  double time_slope = 0.0;       // log(mean seconds) vs log(n)
  std::int64_t bound_violations = 0;
  std::int64_t unsound = 0;

  /// Rows and the summary. Timing columns only when `with_timing`; the
  /// default rendering is reproducible byte for byte.
  std::string render(bool with_timing = false) const;
  /// Human-readable scaling table including wall time.
  std::string table() const;
};

/// Planted degree-{3,4} instances at each size, solved in fixed mode.
BenchReport run_bench(const BenchOptions& opts);

/// Least-squares slope of log(y) against log(x). Pairs with a
/// non-positive coordinate are skipped; fewer than two points give 0.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

enum class SatVerdict : std::uint8_t { kSat, kUnsatClaim, kBudgetExceeded };

struct SatPipelineResult {
  ReductionMap map;
  SearchOutcome search;
  SatVerdict verdict = SatVerdict::kUnsatClaim;
  std::optional<Assignment> assignment;  // decoded and checked
  std::optional<bool> dpll_sat;          // empty outside the DPLL regime
  /// True when the pipeline and DPLL disagree, or decoding failed.
  bool disagreement = false;
  std::string detail;

  nlohmann::json to_json() const;
};

inline constexpr int kDpllRegimeVars = 20;

/// reduce -> solve -> decode -> compare with DPLL.
SatPipelineResult run_sat_pipeline(const Formula& f, const SolverConfig& cfg = {});

std::string to_string(SatVerdict v);

}  // namespace hpath
