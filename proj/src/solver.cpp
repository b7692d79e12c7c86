#include "hpath/solver.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>
#include <random>

#include "rng.hpp"

namespace hpath {

namespace {

struct StageResult {
  ResultKind kind = ResultKind::kNoPathClaim;
  VertexSequence path;
  std::vector<CutMove> moves;
};

struct TraceNode {
  int parent;
  CutMove move;
};

std::vector<CutMove> unwind(const std::vector<TraceNode>& arena, int node) {
  std::vector<CutMove> moves;
  for (int i = node; i >= 0; i = arena[i].parent) moves.push_back(arena[i].move);
  std::reverse(moves.begin(), moves.end());
  return moves;
}

// Breadth-first repair of a single-break path over the current graph.
StageResult run_stage(const Graph& g, BroadPath root, const SolverConfig& cfg, bool tracing,
                      std::int64_t cap, Ledger& ledger, SearchStats& stats) {
  ledger.reset();
  ledger.consume(root.main_pair(), root.break_count());
  // Root seeding is not a kept child.
  auto& consumed_before = stats.ledger_consumed;
  const auto baseline = ledger.consumed();

  StateSet seen;
  if (cfg.dedup) seen.insert(root);

  std::vector<TraceNode> arena;
  std::deque<std::pair<BroadPath, int>> frontier;
  frontier.emplace_back(std::move(root), -1);
  stats.max_queue = std::max<std::int64_t>(stats.max_queue, 1);

  std::int64_t stage_expansions = 0;
  StageResult result;
  auto finish = [&] {
    const auto& now = ledger.consumed();
    consumed_before[0] += now[0] - baseline[0];
    consumed_before[1] += now[1] - baseline[1];
    stats.max_stage_expansions = std::max(stats.max_stage_expansions, stage_expansions);
  };

  while (!frontier.empty()) {
    if (stage_expansions >= cap) {
      result.kind = ResultKind::kBudgetExceeded;
      finish();
      return result;
    }
    auto [state, node] = std::move(frontier.front());
    frontier.pop_front();
    ++stage_expansions;
    ++stats.expansions;

    Expansion ex = expand(g, state, ledger, cfg.dedup ? &seen : nullptr, cfg.heal_secondary);
    if (ex.hamilton) {
      result.kind = ResultKind::kHamiltonPath;
      result.path = std::move(*ex.hamilton);
      if (tracing) {
        result.moves = unwind(arena, node);
        result.moves.push_back(*ex.hamilton_move);
      }
      finish();
      return result;
    }
    stats.children_kept += static_cast<std::int64_t>(ex.children.size());
    for (auto& child : ex.children) {
      int id = -1;
      if (tracing) {
        id = static_cast<int>(arena.size());
        arena.push_back({node, child.move});
      }
      frontier.emplace_back(std::move(child.path), id);
    }
    stats.max_queue = std::max<std::int64_t>(stats.max_queue,
                                             static_cast<std::int64_t>(frontier.size()));
  }
  finish();
  return result;
}

SearchOutcome solve_fixed(const Graph& g, const SolverConfig& cfg) {
  SearchOutcome out;
  const int n = g.size();
  const std::int64_t nn = static_cast<std::int64_t>(n) * n;
  out.stats.stage_expansion_cap = cfg.max_expansions_per_stage > 0 ? cfg.max_expansions_per_stage : nn;
  const bool tracing = cfg.trace.value_or(n <= 64);

  if (n == 1) {
    out.kind = ResultKind::kHamiltonPath;
    out.path = {0};
    if (tracing) out.trace.emplace();
    return out;
  }
  if (n == 2) {
    out.kind = g.adjacent(0, 1) ? ResultKind::kHamiltonPath : ResultKind::kNoPathClaim;
    if (out.kind == ResultKind::kHamiltonPath) out.path = {0, 1};
    out.stats.prefiltered = out.kind == ResultKind::kNoPathClaim;
    if (tracing) out.trace.emplace();
    return out;
  }
  if (!is_connected(g)) {
    out.kind = ResultKind::kNoPathClaim;
    out.stats.prefiltered = true;
    if (tracing) out.trace.emplace();
    return out;
  }

  VertexSequence current(n);
  std::iota(current.begin(), current.end(), 0);
  if (cfg.initial_order_seed) {
    std::mt19937_64 rng(*cfg.initial_order_seed);
    detail::shuffle(current, rng, 1, static_cast<std::size_t>(n - 1));
  }

  // Pairs bridged by virtual edges, so the initial order is a Hamilton path
  // of the augmented graph.
  Graph augmented = g;
  std::vector<VertexPair> virtual_edges;
  for (int i = 0; i + 1 < n; ++i) {
    if (!g.adjacent(current[i], current[i + 1])) {
      virtual_edges.emplace_back(current[i], current[i + 1]);
      augmented.add_edge(current[i], current[i + 1]);
    }
  }
  out.stats.virtual_edges = static_cast<std::int64_t>(virtual_edges.size());

  Ledger ledger(n, cfg.ledger_mode);
  std::vector<StageTrace> trace;

  for (;;) {
    // Virtual edges the current path no longer uses are dropped outright.
    std::vector<char> used(virtual_edges.size(), 0);
    int chosen = -1;
    int chosen_pos = n;
    for (int i = 0; i + 1 < n; ++i) {
      VertexPair e(current[i], current[i + 1]);
      for (std::size_t k = 0; k < virtual_edges.size(); ++k) {
        if (virtual_edges[k] == e) {
          used[k] = 1;
          if (i < chosen_pos) {
            chosen_pos = i;
            chosen = static_cast<int>(k);
          }
        }
      }
    }
    std::vector<VertexPair> kept;
    VertexPair removed;
    for (std::size_t k = 0; k < virtual_edges.size(); ++k) {
      if (static_cast<int>(k) == chosen) {
        removed = virtual_edges[k];
        augmented.remove_edge(removed.u, removed.v);
      } else if (used[k]) {
        kept.push_back(virtual_edges[k]);
      } else {
        augmented.remove_edge(virtual_edges[k].u, virtual_edges[k].v);
      }
    }
    virtual_edges = std::move(kept);
    if (chosen < 0) break;

    ++out.stats.stages;
    BroadPath root = make_broad_path(augmented, current, removed);
    StageTrace stage{current, removed, {}};
    StageResult res =
        run_stage(augmented, std::move(root), cfg, tracing, out.stats.stage_expansion_cap, ledger,
                  out.stats);
    stage.moves = std::move(res.moves);
    if (tracing) trace.push_back(std::move(stage));
    if (res.kind != ResultKind::kHamiltonPath) {
      out.kind = res.kind;
      if (tracing) out.trace = std::move(trace);
      return out;
    }
    current = std::move(res.path);
  }

  out.kind = ResultKind::kHamiltonPath;
  out.path = std::move(current);
  if (tracing) out.trace = std::move(trace);
  return out;
}

}  // namespace

Graph wrap_with_hubs(const Graph& g) {
  const int n = g.size();
  Graph w(n + 2);
  for (const auto& e : g.edges()) w.add_edge(e.u + 1, e.v + 1);
  for (int v = 1; v <= n; ++v) {
    w.add_edge(0, v);
    w.add_edge(v, n + 1);
  }
  return w;
}

SearchOutcome find_h_path(const Graph& g, const SolverConfig& cfg) {
  if (g.size() < 1) throw std::invalid_argument("empty graph");
  const auto start = std::chrono::steady_clock::now();
  SearchOutcome out;
  if (cfg.mode == EndpointMode::kFixed) {
    out = solve_fixed(g, cfg);
  } else if (!is_connected(g)) {
    out.kind = ResultKind::kNoPathClaim;
    out.stats.prefiltered = true;
    const std::int64_t n2 = g.size() + 2;
    out.stats.stage_expansion_cap =
        cfg.max_expansions_per_stage > 0 ? cfg.max_expansions_per_stage : n2 * n2;
    if (cfg.trace.value_or(n2 <= 64)) out.trace.emplace();
  } else {
    out = solve_fixed(wrap_with_hubs(g), cfg);
    if (out.kind == ResultKind::kHamiltonPath) {
      VertexSequence inner(out.path.begin() + 1, out.path.end() - 1);
      for (int& v : inner) --v;
      out.path = std::move(inner);
    }
  }
  out.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

VertexSequence replay_trace(const std::vector<StageTrace>& trace) {
  VertexSequence current;
  for (const auto& stage : trace) {
    current = stage.initial;
    for (const auto& mv : stage.moves) current = cut_and_insert(current, mv);
  }
  return current;
}

std::string to_string(ResultKind kind) {
  switch (kind) {
    case ResultKind::kHamiltonPath: return "hamilton_path";
    case ResultKind::kNoPathClaim: return "no_path_claim";
    case ResultKind::kBudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

std::string to_string(EndpointMode mode) {
  return mode == EndpointMode::kFixed ? "fixed-st" : "any-endpoints";
}

std::string to_string(LedgerMode mode) {
  return mode == LedgerMode::kUnified ? "unified" : "split";
}

}  // namespace hpath
