#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hpath {

/// A sequence of vertex ids. Used for broad paths, witnesses and traces.
using VertexSequence = std::vector<int>;

/// Unordered vertex pair, stored with u < v.
struct VertexPair {
  int u = 0;
  int v = 0;

  VertexPair() = default;
  VertexPair(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const VertexPair&, const VertexPair&) = default;
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class InvalidEdge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InfeasibleDegreeSequence : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph on vertices 0..n-1.
///
/// Keeps both a dense adjacency matrix (constant-time queries) and adjacency
/// lists (neighbor iteration). Neighbor lists are in insertion order.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int size() const { return n_; }
  int edge_count() const { return edge_count_; }

  bool adjacent(int u, int v) const {
    return adj_[static_cast<std::size_t>(u) * n_ + v] != 0;
  }
  std::span<const int> neighbors(int v) const { return lists_[v]; }
  int degree(int v) const { return static_cast<int>(lists_[v].size()); }

  /// Throws InvalidEdge on self-loops, duplicates and out-of-range ids.
  void add_edge(int u, int v);
  /// Returns false when the edge was absent.
  bool remove_edge(int u, int v);

  /// All edges as (u, v) with u < v, sorted lexicographically.
  std::vector<VertexPair> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  int n_ = 0;
  int edge_count_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<std::vector<int>> lists_;
};

/// Inclusive bounds on vertex degrees for the generators.
struct DegreeRange {
  int lo = 3;
  int hi = 4;
};

/// Parses the edge-list format: "n m" then m lines "u v". Lines starting
/// with '#' and blank lines are ignored.
Graph parse_graph(std::string_view text);

/// Inverse of parse_graph; edges are emitted sorted.
std::string serialize_graph(const Graph& g);

/// Random connected graph with every degree inside `degrees`. Deterministic
/// per seed. Requires n >= 4.
Graph generate_low_degree(int n, std::uint64_t seed, DegreeRange degrees = {});

struct PlantedInstance {
  Graph graph;
  VertexSequence path;
};

/// Random graph built around a Hamilton path from 0 to n-1, then padded with
/// chords until every degree is in {3,4}.
PlantedInstance plant_hamiltonian(int n, std::uint64_t seed);

/// True iff s is a permutation of 0..n-1 whose consecutive pairs are edges.
bool is_hamilton_path(const Graph& g, std::span<const int> s);

bool is_permutation_of_vertices(int n, std::span<const int> s);

bool is_connected(const Graph& g);

/// Graph with vertex v removed; higher ids shift down by one.
Graph remove_vertex(const Graph& g, int v);

/// Graph relabelled so that old vertex i becomes perm[i].
Graph relabel(const Graph& g, std::span<const int> perm);

}  // namespace hpath
