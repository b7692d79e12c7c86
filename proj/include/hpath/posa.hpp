#pragma once

#include <cstdint>
#include <optional>

#include "hpath/graph.hpp"

namespace hpath {

/// Pósa rotation-extension with random restarts (any endpoints).
///
/// Extends the path at either end while an unvisited neighbor exists,
/// otherwise rotates at the tail through a random path neighbor. After 10*n
/// rotations without an extension the search restarts from a random vertex.
/// `rotation_budget` bounds rotations across all restarts. An empty result
/// means the budget ran out, not that no path exists.
std::optional<VertexSequence> posa_find(const Graph& g, std::int64_t rotation_budget,
                                        std::uint64_t seed);

}  // namespace hpath
