#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hpath/broad_path.hpp"
#include "hpath/graph.hpp"

namespace hpath {

enum class EndpointMode : std::uint8_t { kFixed, kAny };

struct SolverConfig {
  EndpointMode mode = EndpointMode::kFixed;
  LedgerMode ledger_mode = LedgerMode::kUnified;
  /// When set, the interior of the initial order is shuffled with this seed.
  std::optional<std::uint64_t> initial_order_seed;
  /// Hard cap on expansions per stage; 0 means n*n.
  std::int64_t max_expansions_per_stage = 0;
  bool dedup = false;
  /// Also generate moves that remove the secondary break of a two-break
  /// state. Such moves drop two breaks at once, so the per-class break
  /// algebra shifts by one for them.
  bool heal_secondary = false;
  /// Unset means "on when n <= 64".
  std::optional<bool> trace;
};

struct SearchStats {
  std::int64_t expansions = 0;
  std::int64_t children_kept = 0;
  std::array<std::int64_t, 2> ledger_consumed{0, 0};  // B, B1
  std::int64_t max_queue = 0;
  std::int64_t stages = 0;
  std::int64_t max_stage_expansions = 0;
  std::int64_t stage_expansion_cap = 0;
  std::int64_t virtual_edges = 0;
  bool prefiltered = false;
  double elapsed_seconds = 0.0;
};

/// Moves applied during one stage, starting from `initial`.
struct StageTrace {
  VertexSequence initial;
  VertexPair removed;
  std::vector<CutMove> moves;
};

enum class ResultKind : std::uint8_t { kHamiltonPath, kNoPathClaim, kBudgetExceeded };

struct SearchOutcome {
  ResultKind kind = ResultKind::kNoPathClaim;
  VertexSequence path;  // set for kHamiltonPath
  SearchStats stats;
  /// Present when tracing was enabled. For any-endpoints runs the trace is
  /// in the coordinates of the wrapped graph (original ids shifted by one).
  std::optional<std::vector<StageTrace>> trace;
};

/// Broad-path cut-and-insert search for a Hamilton path.
///
/// Fixed mode looks for a path from 0 to n-1; any mode wraps the graph with
/// two hub vertices and looks for a path between them. NoPathClaim is the
/// heuristic's answer, not a proof.
SearchOutcome find_h_path(const Graph& g, const SolverConfig& cfg = {});

/// Graph with a hub 0 and a hub n+1 joined to every vertex; vertex v maps to v+1.
Graph wrap_with_hubs(const Graph& g);

/// Replays a trace stage by stage and returns the final sequence.
VertexSequence replay_trace(const std::vector<StageTrace>& trace);

std::string to_string(ResultKind kind);
std::string to_string(EndpointMode mode);
std::string to_string(LedgerMode mode);

}  // namespace hpath
