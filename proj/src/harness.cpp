#include "hpath/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "hpath/enumerate.hpp"
#include "hpath/report.hpp"
#include "rng.hpp"

namespace hpath {

using nlohmann::json;

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  jobs = std::min(jobs, count);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    // Static striping keeps the slot assignment independent of timing.
    workers.emplace_back([&, w] {
      for (int i = w; i < count; i += jobs) fn(i);
    });
  }
  for (auto& t : workers) t.join();
}

namespace {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return detail::splitmix64(detail::splitmix64(base ^ detail::splitmix64(a)) + b);
}

json edges_json(const Graph& g) {
  json out = json::array();
  for (const auto& e : g.edges()) out.push_back({e.u, e.v});
  return out;
}

struct InstanceResult {
  int n = 0;
  json record;
  std::optional<Verdict> verdict;  // unset on error
  bool bound_ok = true;
  bool oracle_positive = false;
  std::int64_t expansions = 0;
  std::int64_t max_stage_expansions = 0;
  double seconds = 0.0;
  std::vector<std::string> exported;
};

InstanceResult check_instance(const Graph& g, const SweepOptions& opts, json record) {
  InstanceResult r;
  r.n = g.size();
  record["n"] = g.size();
  record["m"] = g.edge_count();
  record["edges"] = edges_json(g);
  try {
    const SearchOutcome out = find_h_path(g, opts.solver);
    r.expansions = out.stats.expansions;
    r.max_stage_expansions = out.stats.max_stage_expansions;
    r.seconds = out.stats.elapsed_seconds;
    if (opts.solver.ledger_mode == LedgerMode::kUnified) {
      r.bound_ok = out.stats.max_stage_expansions <=
                   unified_stage_bound(solved_size(g.size(), opts.solver));
    }
    record["outcome"] = to_json(out);
    record["ledger_bound_ok"] = r.bound_ok;

    const CrossCheck cc = cross_check(g, out, opts.solver, opts.export_dir);
    r.verdict = cc.verdict;
    record["verdict"] = to_string(cc.verdict);
    r.oracle_positive = out.kind == ResultKind::kHamiltonPath && cc.verdict == Verdict::kAgree;
    if (cc.oracle) {
      r.oracle_positive = cc.oracle->exists;
      record["oracle_exists"] = cc.oracle->exists;
    }
    if (cc.counterexample) {
      r.exported.push_back(cc.counterexample->string());
      record["counterexample"] = cc.counterexample->string();
      if (opts.minimize && cc.verdict == Verdict::kSolverIncomplete) {
        const Graph small = minimize_counterexample(g, opts.solver);
        const SearchOutcome small_out = find_h_path(small, opts.solver);
        const auto path = write_counterexample(*opts.export_dir, small, opts.solver, small_out,
                                               "minimized");
        r.exported.push_back(path.string());
        record["minimized"] = path.string();
        record["minimized_n"] = small.size();
        record["minimized_m"] = small.edge_count();
      }
    }
  } catch (const std::exception& e) {
    r.verdict.reset();
    record["verdict"] = "Error";
    record["error"] = e.what();
  }
  r.record = std::move(record);
  return r;
}

void merge(SweepReport& rep, InstanceResult&& r) {
  ++rep.attempted;
  SizeAggregate& agg = rep.per_n[r.n];
  ++agg.instances;
  if (!r.verdict) {
    ++rep.errors;
    ++agg.errors;
  } else {
    switch (*r.verdict) {
      case Verdict::kAgree:
        ++rep.agree;
        ++agg.agree;
        break;
      case Verdict::kSolverIncomplete:
        ++rep.incomplete;
        ++agg.incomplete;
        break;
      case Verdict::kBudgetExceeded:
        ++rep.budget_exceeded;
        ++agg.budget_exceeded;
        break;
      case Verdict::kSolverUnsound:
        ++rep.unsound;
        ++agg.unsound;
        break;
    }
  }
  if (!r.bound_ok) ++rep.ledger_bound_violations;
  if (r.oracle_positive) ++rep.oracle_positive;
  agg.total_expansions += r.expansions;
  agg.max_expansions = std::max(agg.max_expansions, r.expansions);
  agg.max_stage_expansions = std::max(agg.max_stage_expansions, r.max_stage_expansions);
  agg.total_seconds += r.seconds;
  agg.max_seconds = std::max(agg.max_seconds, r.seconds);
  for (auto& p : r.exported) rep.counterexamples.push_back(std::move(p));
  rep.records.push_back(std::move(r.record));
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

double SweepReport::agreement_rate() const {
  const std::int64_t decided = agree + incomplete + unsound;
  return decided == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(decided);
}

json SweepReport::summary() const {
  json per = json::object();
  for (const auto& [n, a] : per_n) {
    per[std::to_string(n)] = {
        {"instances", a.instances},
        {"agree", a.agree},
        {"solver_incomplete", a.incomplete},
        {"budget_exceeded", a.budget_exceeded},
        {"solver_unsound", a.unsound},
        {"errors", a.errors},
        {"total_expansions", a.total_expansions},
        {"max_expansions", a.max_expansions},
        {"max_stage_expansions", a.max_stage_expansions},
    };
  }
  return {
      {"summary", true},
      {"attempted", attempted},
      {"agree", agree},
      {"solver_incomplete", incomplete},
      {"budget_exceeded", budget_exceeded},
      {"solver_unsound", unsound},
      {"errors", errors},
      {"agreement_rate", agreement_rate()},
      {"ledger_bound_violations", ledger_bound_violations},
      {"oracle_positive", oracle_positive},
      {"counterexamples", counterexamples},
      {"per_n", per},
  };
}

std::string SweepReport::render() const {
  std::string out;
  for (const auto& r : records) out += to_line(r) + "\n";
  out += to_line(summary()) + "\n";
  return out;
}

std::string SweepReport::render_timing() const {
  std::string out;
  for (const auto& [n, a] : per_n) {
    const double mean = a.instances ? a.total_seconds / static_cast<double>(a.instances) : 0.0;
    json j = {{"n", n},
              {"instances", a.instances},
              {"mean_ms", mean * 1e3},
              {"max_ms", a.max_seconds * 1e3},
              {"total_ms", a.total_seconds * 1e3}};
    out += to_line(j) + "\n";
  }
  return out;
}

SweepReport run_sweep(const SweepOptions& opts) {
  std::vector<Graph> graphs;
  std::vector<json> stubs;
  if (opts.kind == SweepKind::kExhaustive) {
    for (int n = std::max(1, opts.min_n); n <= opts.max_n; ++n) {
      auto level = connected_graphs(n, opts.degree_cap);
      for (std::size_t i = 0; i < level.size(); ++i) {
        stubs.push_back({{"index", static_cast<std::int64_t>(stubs.size())},
                         {"code", canonical_code(level[i])}});
        graphs.push_back(std::move(level[i]));
      }
    }
  } else {
    for (int i = 0; i < opts.count; ++i) {
      const std::uint64_t s = derive_seed(opts.seed, static_cast<std::uint64_t>(opts.max_n), i);
      stubs.push_back({{"index", i}, {"instance_seed", s}});
      graphs.emplace_back();
    }
  }

  const int count = static_cast<int>(stubs.size());
  std::vector<InstanceResult> results(count);
  parallel_for(count, opts.jobs, [&](int i) {
    if (opts.kind == SweepKind::kExhaustive) {
      results[i] = check_instance(graphs[i], opts, stubs[i]);
      return;
    }
    try {
      const auto s = stubs[i]["instance_seed"].get<std::uint64_t>();
      const Graph g = generate_low_degree(opts.max_n, s, {3, opts.degree_cap});
      results[i] = check_instance(g, opts, stubs[i]);
    } catch (const std::exception& e) {
      results[i].n = opts.max_n;
      results[i].record = stubs[i];
      results[i].record["verdict"] = "Error";
      results[i].record["error"] = e.what();
    }
  });

  SweepReport rep;
  for (auto& r : results) merge(rep, std::move(r));
  return rep;
}

SweepReport run_hunt(const HuntOptions& opts) {
  SweepReport total;
  for (int round = 0; round < opts.rounds; ++round) {
    SweepOptions o = opts.sweep;
    o.kind = SweepKind::kSampled;
    o.seed = derive_seed(opts.sweep.seed, 0x68756e74, round);
    SweepReport rep = run_sweep(o);
    for (auto& r : rep.records) {
      r["round"] = round;
      total.records.push_back(std::move(r));
    }
    total.attempted += rep.attempted;
    total.agree += rep.agree;
    total.incomplete += rep.incomplete;
    total.budget_exceeded += rep.budget_exceeded;
    total.unsound += rep.unsound;
    total.errors += rep.errors;
    total.ledger_bound_violations += rep.ledger_bound_violations;
    total.oracle_positive += rep.oracle_positive;
    for (auto& p : rep.counterexamples) total.counterexamples.push_back(std::move(p));
    for (const auto& [n, a] : rep.per_n) {
      SizeAggregate& t = total.per_n[n];
      t.instances += a.instances;
      t.agree += a.agree;
      t.incomplete += a.incomplete;
      t.budget_exceeded += a.budget_exceeded;
      t.unsound += a.unsound;
      t.errors += a.errors;
      t.total_expansions += a.total_expansions;
      t.max_expansions = std::max(t.max_expansions, a.max_expansions);
      t.max_stage_expansions = std::max(t.max_stage_expansions, a.max_stage_expansions);
      t.total_seconds += a.total_seconds;
      t.max_seconds = std::max(t.max_seconds, a.max_seconds);
    }
    const bool found = rep.incomplete + rep.unsound > 0;
    if (found && opts.stop_after > 0 && total.incomplete + total.unsound >= opts.stop_after) break;
  }
  return total;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(xs.size(), ys.size()); ++i) {
    if (xs[i] > 0 && ys[i] > 0) pts.emplace_back(std::log(xs[i]), std::log(ys[i]));
  }
  if (pts.size() < 2) return 0.0;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx == 0 ? 0.0 : sxy / sxx;
}

BenchReport run_bench(const BenchOptions& opts) {
  struct Job {
    int n;
    int index;
  };
  std::vector<Job> jobs;
  for (int n : opts.sizes) {
    for (int i = 0; i < opts.count; ++i) jobs.push_back({n, i});
  }
  SolverConfig cfg = opts.solver;
  cfg.mode = EndpointMode::kFixed;

  BenchReport rep;
  rep.rows.resize(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), opts.jobs, [&](int k) {
    BenchRow& row = rep.rows[k];
    row.n = jobs[k].n;
    row.index = jobs[k].index;
    row.instance_seed = derive_seed(opts.seed, static_cast<std::uint64_t>(row.n), row.index);
    const PlantedInstance inst = plant_hamiltonian(row.n, row.instance_seed);
    const SearchOutcome out = find_h_path(inst.graph, cfg);
    row.kind = out.kind;
    row.sound = out.kind != ResultKind::kHamiltonPath || is_hamilton_path(inst.graph, out.path);
    row.expansions = out.stats.expansions;
    row.stages = out.stats.stages;
    row.max_stage_expansions = out.stats.max_stage_expansions;
    row.virtual_edges = out.stats.virtual_edges;
    row.seconds = out.stats.elapsed_seconds;
    if (cfg.ledger_mode == LedgerMode::kUnified) {
      row.within_bound = row.max_stage_expansions <= unified_stage_bound(row.n);
    }
  });

  std::vector<double> xs, ye, yt;
  for (int n : opts.sizes) {
    BenchSize s;
    s.n = n;
    double exp_sum = 0, sec_sum = 0;
    for (const auto& row : rep.rows) {
      if (row.n != n) continue;
      ++s.instances;
      if (row.kind == ResultKind::kHamiltonPath && row.sound) ++s.successes;
      exp_sum += static_cast<double>(row.expansions);
      sec_sum += row.seconds;
      s.max_expansions = std::max(s.max_expansions, row.expansions);
      s.max_seconds = std::max(s.max_seconds, row.seconds);
    }
    if (s.instances > 0) {
      s.mean_expansions = exp_sum / s.instances;
      s.mean_seconds = sec_sum / s.instances;
    }
    xs.push_back(n);
    ye.push_back(s.mean_expansions);
    yt.push_back(s.mean_seconds);
    rep.sizes.push_back(s);
  }
  for (const auto& row : rep.rows) {
    if (!row.within_bound) ++rep.bound_violations;
    if (!row.sound) ++rep.unsound;
  }
  rep.expansion_slope = loglog_slope(xs, ye);
  rep.time_slope = loglog_slope(xs, yt);
  return rep;
}

std::string BenchReport::render(bool with_timing) const {
  std::string out;
  for (const auto& r : rows) {
    json j = {{"n", r.n},
              {"index", r.index},
              {"instance_seed", r.instance_seed},
              {"result", to_string(r.kind)},
              {"success", r.kind == ResultKind::kHamiltonPath && r.sound},
              {"expansions", r.expansions},
              {"stages", r.stages},
              {"max_stage_expansions", r.max_stage_expansions},
              {"virtual_edges", r.virtual_edges},
              {"ledger_bound_ok", r.within_bound}};
    if (with_timing) j["elapsed_ms"] = r.seconds * 1e3;
    out += to_line(j) + "\n";
  }
  json per = json::array();
  for (const auto& s : sizes) {
    json j = {{"n", s.n},
              {"instances", s.instances},
              {"successes", s.successes},
              {"success_rate", s.instances ? static_cast<double>(s.successes) / s.instances : 0.0},
              {"mean_expansions", s.mean_expansions},
              {"max_expansions", s.max_expansions}};
    if (with_timing) {
      j["mean_ms"] = s.mean_seconds * 1e3;
      j["max_ms"] = s.max_seconds * 1e3;
    }
    per.push_back(j);
  }
  json summary = {{"summary", true},
                  {"sizes", per},
                  {"expansion_slope", expansion_slope},
                  {"ledger_bound_violations", bound_violations},
                  {"unsound", unsound}};
  if (with_timing) summary["time_slope"] = time_slope;
  out += to_line(summary) + "\n";
  return out;
}

std::string BenchReport::table() const {
  std::ostringstream os;
  os << "     n  inst  success  mean_exp    max_exp   mean_ms    max_ms\n";
  for (const auto& s : sizes) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%6d %5d %8d %9.1f %10lld %9.3f %9.3f\n", s.n, s.instances,
                  s.successes, s.mean_expansions, static_cast<long long>(s.max_expansions),
                  s.mean_seconds * 1e3, s.max_seconds * 1e3);
    os << buf;
  }
  os << "slope log(expansions)/log(n): " << fixed(expansion_slope, 3) << "\n";
  os << "slope log(time)/log(n):       " << fixed(time_slope, 3) << "\n";
  return os.str();
}

std::string to_string(SatVerdict v) {
  switch (v) {
    case SatVerdict::kSat:
      return "SAT";
    case SatVerdict::kUnsatClaim:
      return "UNSAT-claim";
    case SatVerdict::kBudgetExceeded:
      return "BudgetExceeded";
  }
  return "?";
}

SatPipelineResult run_sat_pipeline(const Formula& f, const SolverConfig& cfg) {
  SatPipelineResult r{.map = reduce_3sat(f)};
  SolverConfig c = cfg;
  c.mode = EndpointMode::kFixed;
  r.search = find_h_path(r.map.graph, c);
  std::string detail;
  switch (r.search.kind) {
    case ResultKind::kHamiltonPath:
      r.verdict = SatVerdict::kSat;
      try {
        Assignment a = decode_assignment(r.search.path, r.map);
        if (!satisfies(f, a)) throw DecodeError("decoded assignment does not satisfy the formula");
        r.assignment = std::move(a);
      } catch (const DecodeError& e) {
        r.disagreement = true;
        detail = e.what();
      }
      break;
    case ResultKind::kNoPathClaim:
      r.verdict = SatVerdict::kUnsatClaim;
      break;
    case ResultKind::kBudgetExceeded:
      r.verdict = SatVerdict::kBudgetExceeded;
      break;
  }
  if (f.num_vars <= kDpllRegimeVars) {
    r.dpll_sat = dpll_solve(f).has_value();
    if (r.verdict == SatVerdict::kUnsatClaim && *r.dpll_sat) {
      r.disagreement = true;
      detail = "solver claims no path but the formula is satisfiable";
    }
    if (r.verdict == SatVerdict::kSat && !*r.dpll_sat) {
      r.disagreement = true;
      detail = "path found for an unsatisfiable formula";
    }
  }
  r.detail = detail;
  return r;
}

json SatPipelineResult::to_json() const {
  json j = {{"verdict", to_string(verdict)},
            {"vertices", map.graph.size()},
            {"edges", map.graph.edge_count()},
            {"disagreement", disagreement},
            {"search", hpath::to_json(search)}};
  if (assignment) {
    json vals = json::array();
    for (std::size_t i = 0; i < assignment->size(); ++i) {
      vals.push_back((*assignment)[i] ? static_cast<int>(i) + 1 : -static_cast<int>(i) - 1);
    }
    j["assignment"] = vals;
  }
  j["dpll_sat"] = dpll_sat ? json(*dpll_sat) : json(nullptr);
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

}  // namespace hpath
