#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "hpath/graph.hpp"
#include "hpath/solver.hpp"

namespace hpath {

enum class OracleMethod : std::uint8_t { kBitmaskDp, kBacktracking };

struct OracleAnswer {
  bool exists = false;
  std::optional<VertexSequence> witness;
  OracleMethod method = OracleMethod::kBitmaskDp;
};

struct OracleOptions {
  /// Unset picks the DP for n <= kMaxDpVertices and backtracking above.
  std::optional<OracleMethod> method;
  std::uint64_t node_budget = 200'000'000;
};

inline constexpr int kMaxDpVertices = 24;

class OracleTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleUnknown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact Hamilton path decision. Fixed mode asks for a path from 0 to n-1.
OracleAnswer oracle_has_hpath(const Graph& g, EndpointMode endpoints, OracleOptions opts = {});

enum class Verdict : std::uint8_t { kAgree, kSolverUnsound, kSolverIncomplete, kBudgetExceeded };

std::string to_string(Verdict v);

struct CrossCheck {
  Verdict verdict = Verdict::kAgree;
  std::optional<OracleAnswer> oracle;  // not consulted when the solver path checks out
  std::optional<std::filesystem::path> counterexample;
};

/// Compares a solver outcome with the exact oracle. A SolverIncomplete
/// verdict writes a counterexample file into `export_dir` when one is given.
CrossCheck cross_check(const Graph& g, const SearchOutcome& outcome, const SolverConfig& cfg,
                       const std::optional<std::filesystem::path>& export_dir = std::nullopt);

/// True when the solver claims no path although the oracle finds one.
/// Oracle failures count as "not a failure".
bool reproduces_incomplete(const Graph& g, const SolverConfig& cfg);

class NotAFailure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Greedy delta debugging: drop edges, then vertices, while `keep` holds,
/// restarting after every successful removal. The result is a local minimum.
Graph minimize_graph(Graph g, const std::function<bool(const Graph&)>& keep);

/// minimize_graph with reproduces_incomplete as the predicate. Throws
/// NotAFailure when g does not reproduce.
Graph minimize_counterexample(const Graph& g, const SolverConfig& cfg);

/// Counterexample file: commented header (verdict, config, trace) followed
/// by the graph in edge-list format. Returns the written path, named by a
/// hash of the graph so reruns overwrite rather than duplicate.
std::filesystem::path write_counterexample(const std::filesystem::path& dir, const Graph& g,
                                           const SolverConfig& cfg, const SearchOutcome& outcome,
                                           const std::string& note = {});

}  // namespace hpath
