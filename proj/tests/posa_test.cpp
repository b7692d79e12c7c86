#include "hpath/posa.hpp"

#include <random>

#include <gtest/gtest.h>

#include "hpath/graph.hpp"
#include "naive.hpp"

namespace hpath {
namespace {

Graph complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

TEST(Posa, CompleteGraph) {
  auto p = posa_find(complete(5), 1000, 1);
  ASSERT_TRUE(p.has_value());
  EXPECT_TRUE(is_hamilton_path(complete(5), *p));
}

TEST(Posa, PathGraphNeedsRotationsOrLuck) {
  Graph g(12);
  for (int v = 0; v + 1 < 12; ++v) g.add_edge(v, v + 1);
  auto p = posa_find(g, 100000, 4);
  ASSERT_TRUE(p.has_value());
  EXPECT_TRUE(is_hamilton_path(g, *p));
}

TEST(Posa, DisconnectedGivesNothing) {
  Graph g(6);
  for (int base : {0, 3}) {
    g.add_edge(base, base + 1);
    g.add_edge(base + 1, base + 2);
    g.add_edge(base, base + 2);
  }
  EXPECT_FALSE(posa_find(g, 5000, 1).has_value());
}

TEST(Posa, DeterministicForSeed) {
  auto inst = plant_hamiltonian(200, 3);
  auto a = posa_find(inst.graph, 2'000'000, 11);
  auto b = posa_find(inst.graph, 2'000'000, 11);
  EXPECT_EQ(a, b);
  if (a) {
    EXPECT_TRUE(is_hamilton_path(inst.graph, *a));
  }
}

TEST(Posa, ResultsAreAlwaysValid) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng() % 40);
    Graph g = testing::random_graph(rng, n, 0.15);
    auto p = posa_find(g, 20 * n, rng());
    if (p) {
      EXPECT_TRUE(is_hamilton_path(g, *p));
    }
  }
}

}  // namespace
}  // namespace hpath
