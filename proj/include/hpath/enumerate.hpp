#pragma once

#include <cstdint>
#include <vector>

#include "hpath/graph.hpp"

namespace hpath {

inline constexpr int kMaxCodedVertices = 11;

/// Canonical adjacency code for graphs with at most 11 vertices: the
/// minimum code over all labelings that respect the colour-refinement
/// partition. Two graphs are isomorphic iff their codes (and sizes) match.
std::uint64_t canonical_code(const Graph& g);

/// Inverse of the bit layout used by canonical_code.
Graph graph_from_code(int n, std::uint64_t code);

/// One representative per isomorphism class of connected graphs on exactly
/// n vertices with maximum degree <= max_degree, sorted by canonical code.
/// Built by adding a vertex to every smaller class.
std::vector<Graph> connected_graphs(int n, int max_degree);

}  // namespace hpath
