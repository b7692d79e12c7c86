#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hpath/graph.hpp"

namespace hpath {

struct Literal {
  int var = 0;  // 0-based
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;
using Assignment = std::vector<bool>;

struct Formula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const Formula&, const Formula&) = default;
};

class ClauseTooWide : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// DIMACS CNF with at most three literals per clause. Throws ParseError
/// (with line number) or ClauseTooWide.
Formula parse_cnf(std::string_view text);

std::string serialize_cnf(const Formula& f);

bool satisfies(const Formula& f, const Assignment& a);

/// Exact SAT via DPLL with unit propagation and pure-literal elimination.
std::optional<Assignment> dpll_solve(const Formula& f);

/// Vertex layout of one clause gadget.
struct ClauseBlock {
  int first = 0;  // first vertex id of the block
  int size = 0;   // vertex count of the block
  /// Literal carried by each cycle slot; unit clauses are doubled.
  std::vector<Literal> slots;
  /// Cycle vertices; slot k joins corner k and corner k+1 (mod slots).
  std::vector<int> corners;
  /// First vertex of each slot's widget (8 consecutive ids).
  std::vector<int> widgets;
};

/// Hamilton-path instance built from a formula, with fixed endpoints 0 and
/// n-1.
///
/// Each variable i owns two vertices L_i and R_i joined by a "true chain"
/// and a "false chain". A chain runs through the B-rows of the widgets of
/// every occurrence of its literal and is a plain edge when the literal
/// never occurs. Each clause with k literals is a k-cycle of corner
/// vertices whose sides are the A-rows of its widgets; a Hamilton path can
/// never use every side of the cycle, so some widget is crossed only along
/// its B-row, which forces the chain of a true literal.
///
/// The widget has rows a1 a2 a3 a4 and b1 b2 b3 b4 plus rungs a1-b2, a2-b4,
/// a3-b1, a4-b3, and is entered only at a1, a4, b1 and b4. Its only covers
/// are one path a1..a4, one path b1..b4, or both rows separately.
///
/// Layout: 0 source, then L_i = 1+2i and R_i = 2+2i, then clause blocks in
/// order, then the sink. Consecutive clause blocks are joined corner to
/// corner; R_{last} feeds the first block and the last block feeds the sink.
/// An empty clause becomes a single isolated vertex.
struct ReductionMap {
  Graph graph;
  Formula formula;
  std::vector<std::pair<int, int>> var_anchor;  // (L_i, R_i)
  std::vector<ClauseBlock> clause_block;
  /// Widget starts along each chain, in traversal order from L_i.
  std::vector<std::vector<int>> true_chain;
  std::vector<std::vector<int>> false_chain;
  int widget_size = 8;
};

inline constexpr int kWidgetSize = 8;

/// Vertex count of reduce_3sat(f).graph: 2 + 2*num_vars plus, per clause,
/// 9*k for k = max(2, width) literal slots, or 1 for an empty clause.
int reduced_vertex_count(const Formula& f);

ReductionMap reduce_3sat(const Formula& f);

/// Reads the assignment off a Hamilton path of map.graph. Throws DecodeError
/// if the sequence is not such a path or the assignment fails the formula.
Assignment decode_assignment(const VertexSequence& path, const ReductionMap& map);

/// Constructs the Hamilton path that corresponds to a satisfying assignment.
VertexSequence embed_assignment(const Assignment& a, const ReductionMap& map);

/// Sidecar decode map (stable key order).
nlohmann::json decode_map_to_json(const ReductionMap& map);

}  // namespace hpath
