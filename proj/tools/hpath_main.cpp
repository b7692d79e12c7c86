// hpath: command-line front end for the broad-path solver.
//
// Exit codes
//   solve:        0 path found, 1 no-path claim, 2 budget exceeded, 3 usage/parse error
//   sweep, hunt:  0 all agree, 1 solver-incomplete instance found, 2 budget exceeded
//                 somewhere, 3 error, 4 unsound witness or ledger-bound violation
//   bench:        0 ok, 3 error, 4 unsound witness or ledger-bound violation
//   sat:          0 SAT, 1 UNSAT claim, 2 budget exceeded, 3 error, 4 disagreement

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hpath/graph.hpp"
#include "hpath/harness.hpp"
#include "hpath/report.hpp"
#include "hpath/sat.hpp"
#include "hpath/solver.hpp"

namespace {

constexpr int kExitError = 3;
constexpr int kExitUnsound = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct SolverFlags {
  std::string mode = "fixed";
  std::string ledger = "unified";
  std::int64_t order_seed = -1;
  std::int64_t max_expansions = 0;
  bool dedup = false;
  bool heal = false;
  std::string trace = "auto";

  void attach(CLI::App* app) {
    app->add_option("--mode", mode, "Endpoint mode")
        ->check(CLI::IsMember({"fixed", "any"}))
        ->capture_default_str();
    app->add_option("--ledger", ledger, "Ledger mode")
        ->check(CLI::IsMember({"unified", "split"}))
        ->capture_default_str();
    app->add_option("--order-seed", order_seed, "Shuffle the initial interior order (-1: identity)");
    app->add_option("--max-expansions", max_expansions, "Per-stage expansion cap (0: n*n)")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--dedup", dedup, "Drop repeated states within a stage");
    app->add_flag("--heal", heal, "Allow moves that remove the secondary break");
    app->add_option("--trace", trace, "Record move traces")
        ->check(CLI::IsMember({"auto", "on", "off"}))
        ->capture_default_str();
  }

  hpath::SolverConfig config() const {
    hpath::SolverConfig c;
    c.mode = mode == "any" ? hpath::EndpointMode::kAny : hpath::EndpointMode::kFixed;
    c.ledger_mode = ledger == "split" ? hpath::LedgerMode::kSplit : hpath::LedgerMode::kUnified;
    if (order_seed >= 0) c.initial_order_seed = static_cast<std::uint64_t>(order_seed);
    c.max_expansions_per_stage = max_expansions;
    c.dedup = dedup;
    c.heal_secondary = heal;
    if (trace != "auto") c.trace = trace == "on";
    return c;
  }
};

struct SweepFlags {
  std::string kind = "exhaustive";
  int min_n = 1;
  int max_n = 5;
  int degree_cap = 4;
  std::uint64_t seed = 1;
  int count = 100;
  std::string export_dir;
  bool no_minimize = false;
  int jobs = 1;
  std::string out;
  std::string timing_out;

  void attach(CLI::App* app, bool with_kind) {
    if (with_kind) {
      app->add_option("--kind", kind, "Instance source")
          ->check(CLI::IsMember({"exhaustive", "sampled"}))
          ->capture_default_str();
      app->add_option("--min-n", min_n, "Smallest size (exhaustive)")->capture_default_str();
    }
    app->add_option("--max-n", max_n, "Largest size (exhaustive) or the size (sampled)")
        ->capture_default_str();
    app->add_option("--degree-cap", degree_cap, "Maximum vertex degree")->capture_default_str();
    app->add_option("--seed", seed, "Suite seed")->capture_default_str();
    app->add_option("--count", count, "Sampled instances")->capture_default_str();
    app->add_option("--export", export_dir, "Directory for counterexample files");
    app->add_flag("--no-minimize", no_minimize, "Skip counterexample minimization");
    app->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    app->add_option("--out", out, "Report file (default: stdout)");
    app->add_option("--timing-out", timing_out, "Wall-time aggregates file");
  }

  hpath::SweepOptions options(const hpath::SolverConfig& cfg) const {
    hpath::SweepOptions o;
    o.kind = kind == "sampled" ? hpath::SweepKind::kSampled : hpath::SweepKind::kExhaustive;
    o.min_n = min_n;
    o.max_n = max_n;
    o.degree_cap = degree_cap;
    o.seed = seed;
    o.count = count;
    o.solver = cfg;
    if (!export_dir.empty()) o.export_dir = export_dir;
    o.minimize = !no_minimize;
    o.jobs = jobs;
    return o;
  }
};

int sweep_exit(const hpath::SweepReport& r) {
  if (r.unsound > 0 || r.ledger_bound_violations > 0) return kExitUnsound;
  if (r.errors > 0) return kExitError;
  if (r.incomplete > 0) return 1;
  if (r.budget_exceeded > 0) return 2;
  return 0;
}

void finish_sweep(const hpath::SweepReport& rep, const SweepFlags& f) {
  write_output(f.out, rep.render());
  if (!f.timing_out.empty()) write_output(f.timing_out, rep.render_timing());
  std::cerr << "attempted " << rep.attempted << ", agree " << rep.agree << ", incomplete "
            << rep.incomplete << ", budget " << rep.budget_exceeded << ", unsound " << rep.unsound
            << ", errors " << rep.errors << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamilton path search by broad-path cut and insert"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Solve one graph file");
  std::string graph_file;
  bool timing = false;
  SolverFlags solve_flags;
  solve->add_option("graph", graph_file, "Edge-list graph file")->required();
  solve->add_flag("--timing", timing, "Include wall time in the record");
  solve_flags.attach(solve);

  auto* sweep = app.add_subcommand("sweep", "Cross-check the solver against the exact oracle");
  SweepFlags sweep_flags;
  SolverFlags sweep_solver;
  sweep_solver.mode = "any";
  sweep_flags.attach(sweep, true);
  sweep_solver.attach(sweep);

  auto* hunt = app.add_subcommand("hunt", "Sampled sweeps until a counterexample appears");
  SweepFlags hunt_flags;
  hunt_flags.max_n = 10;
  SolverFlags hunt_solver;
  hunt_solver.mode = "any";
  int rounds = 10;
  int stop_after = 1;
  hunt_flags.attach(hunt, false);
  hunt_solver.attach(hunt);
  hunt->add_option("--rounds", rounds, "Sweep rounds")->capture_default_str();
  hunt->add_option("--stop-after", stop_after, "Stop after this many failures (0: never)")
      ->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Scaling run on planted Hamiltonian graphs");
  std::vector<int> sizes{50, 100, 200, 400};
  int bench_count = 10;
  std::uint64_t bench_seed = 1;
  int bench_jobs = 1;
  bool bench_timing = false;
  bool bench_table = false;
  std::string bench_out;
  SolverFlags bench_solver;
  bench_solver.trace = "off";
  bench->add_option("--sizes", sizes, "Vertex counts")->delimiter(',');
  bench->add_option("--count", bench_count, "Instances per size")->capture_default_str();
  bench->add_option("--seed", bench_seed, "Suite seed")->capture_default_str();
  bench->add_option("--jobs", bench_jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_flag("--timing", bench_timing, "Include wall time in the records");
  bench->add_flag("--table", bench_table, "Print a human-readable table to stderr");
  bench->add_option("--out", bench_out, "Report file (default: stdout)");
  bench_solver.attach(bench);

  auto* sat = app.add_subcommand("sat", "Decide a CNF formula through the reduction");
  std::string cnf_file;
  std::string map_out;
  SolverFlags sat_solver;
  sat->add_option("cnf", cnf_file, "DIMACS CNF file, at most 3 literals per clause")->required();
  sat->add_option("--map-out", map_out, "Write the decode map as JSON");
  sat_solver.attach(sat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) {
      const hpath::Graph g = hpath::parse_graph(read_file(graph_file));
      const hpath::SolverConfig cfg = solve_flags.config();
      const hpath::SearchOutcome out = hpath::find_h_path(g, cfg);
      if (out.kind == hpath::ResultKind::kHamiltonPath && !hpath::is_hamilton_path(g, out.path)) {
        std::cerr << "error: solver produced an invalid witness\n";
        return kExitUnsound;
      }
      nlohmann::json record = hpath::to_json(out, timing);
      record["config"] = hpath::to_json(cfg);
      if (out.trace) record["trace"] = hpath::to_json(*out.trace);
      std::cout << hpath::to_line(record) << "\n";
      switch (out.kind) {
        case hpath::ResultKind::kHamiltonPath:
          return 0;
        case hpath::ResultKind::kNoPathClaim:
          return 1;
        case hpath::ResultKind::kBudgetExceeded:
          return 2;
      }
    }
    if (*sweep) {
      const auto rep = hpath::run_sweep(sweep_flags.options(sweep_solver.config()));
      finish_sweep(rep, sweep_flags);
      return sweep_exit(rep);
    }
    if (*hunt) {
      hpath::HuntOptions o;
      o.sweep = hunt_flags.options(hunt_solver.config());
      o.sweep.kind = hpath::SweepKind::kSampled;
      o.rounds = rounds;
      o.stop_after = stop_after;
      const auto rep = hpath::run_hunt(o);
      finish_sweep(rep, hunt_flags);
      return sweep_exit(rep);
    }
    if (*bench) {
      hpath::BenchOptions o;
      o.sizes = sizes;
      o.count = bench_count;
      o.seed = bench_seed;
      o.jobs = bench_jobs;
      o.solver = bench_solver.config();
      const auto rep = hpath::run_bench(o);
      write_output(bench_out, rep.render(bench_timing));
      if (bench_table) std::cerr << rep.table();
      return rep.unsound > 0 || rep.bound_violations > 0 ? kExitUnsound : 0;
    }
    if (*sat) {
      const hpath::Formula f = hpath::parse_cnf(read_file(cnf_file));
      const auto res = hpath::run_sat_pipeline(f, sat_solver.config());
      if (!map_out.empty()) write_output(map_out, hpath::decode_map_to_json(res.map).dump(2) + "\n");
      std::cout << hpath::to_line(res.to_json()) << "\n";
      if (res.disagreement) {
        std::cerr << "COUNTEREXAMPLE: reduction pipeline disagrees with DPLL: " << res.detail
                  << "\n";
        return kExitUnsound;
      }
      switch (res.verdict) {
        case hpath::SatVerdict::kSat:
          return 0;
        case hpath::SatVerdict::kUnsatClaim:
          return 1;
        case hpath::SatVerdict::kBudgetExceeded:
          return 2;
      }
    }
  } catch (const hpath::ParseError& e) {
    std::cerr << "parse error at line " << e.line() << ": " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
