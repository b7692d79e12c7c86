#include "hpath/posa.hpp"

#include <algorithm>
#include <random>

#include "rng.hpp"

namespace hpath {

std::optional<VertexSequence> posa_find(const Graph& g, std::int64_t rotation_budget,
                                        std::uint64_t seed) {
  const int n = g.size();
  if (n == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::vector<int> pos(n, -1);
  VertexSequence path;
  std::vector<int> options;

  auto restart = [&] {
    for (int v : path) pos[v] = -1;
    path.clear();
    int start = static_cast<int>(detail::uniform_index(rng, n));
    path.push_back(start);
    pos[start] = 0;
  };
  auto fresh_neighbors = [&](int v) {
    options.clear();
    for (int w : g.neighbors(v)) {
      if (pos[w] < 0) options.push_back(w);
    }
  };

  restart();
  const std::int64_t stall_limit = 10LL * n;
  std::int64_t rotations = 0;
  std::int64_t stalled = 0;
  for (;;) {
    if (static_cast<int>(path.size()) == n) return path;

    fresh_neighbors(path.back());
    if (options.empty()) {
      // Try the other end by flipping the path.
      fresh_neighbors(path.front());
      if (!options.empty()) {
        std::reverse(path.begin(), path.end());
        for (int i = 0; i < static_cast<int>(path.size()); ++i) pos[path[i]] = i;
      }
    }
    if (!options.empty()) {
      int w = options[detail::uniform_index(rng, options.size())];
      pos[w] = static_cast<int>(path.size());
      path.push_back(w);
      stalled = 0;
      continue;
    }

    if (rotations >= rotation_budget) return std::nullopt;
    ++rotations;
    ++stalled;

    // Rotation: for a tail neighbor path[i], reverse path[i+1..] so that
    // path[i+1] becomes the new tail.
    const int tail = path.back();
    const int last = static_cast<int>(path.size()) - 1;
    options.clear();
    for (int w : g.neighbors(tail)) {
      if (pos[w] >= 0 && pos[w] < last - 1) options.push_back(w);
    }
    if (options.empty() || stalled >= stall_limit) {
      restart();
      stalled = 0;
      continue;
    }
    int pivot = pos[options[detail::uniform_index(rng, options.size())]];
    std::reverse(path.begin() + pivot + 1, path.end());
    for (int i = pivot + 1; i <= last; ++i) pos[path[i]] = i;
  }
}

}  // namespace hpath
