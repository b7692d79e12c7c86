#include "hpath/graph.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "naive.hpp"

namespace hpath {
namespace {

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

TEST(ParseGraph, ReadsEdgeList) {
  Graph g = parse_graph("3 2\n0 1\n1 2");
  EXPECT_EQ(g.size(), 3);
  EXPECT_EQ(g.edge_count(), 2);
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_TRUE(g.adjacent(2, 1));
  EXPECT_FALSE(g.adjacent(0, 2));
}

TEST(ParseGraph, EmptyEdgeSet) {
  Graph g = parse_graph("2 0");
  EXPECT_EQ(g.size(), 2);
  EXPECT_EQ(g.edge_count(), 0);
}

TEST(ParseGraph, SkipsCommentsAndBlankLines) {
  Graph g = parse_graph("# header comment\n\n3 1\n# edge follows\n2 0\n\n");
  EXPECT_EQ(g.edge_count(), 1);
  EXPECT_TRUE(g.adjacent(0, 2));
}

TEST(ParseGraph, RejectsSelfLoop) { EXPECT_THROW(parse_graph("3 1\n0 0"), InvalidEdge); }

TEST(ParseGraph, RejectsDuplicateInEitherOrder) {
  EXPECT_THROW(parse_graph("3 2\n0 1\n1 0"), InvalidEdge);
}

TEST(ParseGraph, RejectsOutOfRangeVertex) { EXPECT_THROW(parse_graph("3 1\n0 3"), InvalidEdge); }

TEST(ParseGraph, ReportsLineOfMalformedInput) {
  try {
    parse_graph("3 2\n0 1\n1 x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ParseGraph, RejectsEdgeCountMismatch) {
  EXPECT_THROW(parse_graph("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(parse_graph("3 1\n0 1\n1 2\n"), ParseError);
  EXPECT_THROW(parse_graph(""), ParseError);
}

TEST(ParseGraph, RoundTripsSerializedGraphs) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 15);
    Graph g = testing::random_graph(rng, n, 0.3);
    const std::string text = serialize_graph(g);
    EXPECT_EQ(parse_graph(text), g);
    EXPECT_EQ(serialize_graph(parse_graph(text)), text);
  }
}

TEST(Serialize, EmitsSortedEdges) {
  Graph g(4);
  g.add_edge(3, 2);
  g.add_edge(1, 0);
  g.add_edge(2, 0);
  EXPECT_EQ(serialize_graph(g), "4 3\n0 1\n0 2\n2 3\n");
}

TEST(GraphType, RemoveEdgeAndSymmetry) {
  Graph g(3);
  g.add_edge(0, 2);
  EXPECT_TRUE(g.adjacent(2, 0));
  EXPECT_TRUE(g.remove_edge(2, 0));
  EXPECT_FALSE(g.remove_edge(0, 2));
  EXPECT_EQ(g.edge_count(), 0);
  EXPECT_EQ(g.degree(0), 0);
}

TEST(IsHamiltonPath, Examples) {
  EXPECT_TRUE(is_hamilton_path(cycle(5), std::vector<int>{0, 1, 2, 3, 4}));
  Graph path = parse_graph("4 3\n0 1\n1 2\n2 3");
  EXPECT_FALSE(is_hamilton_path(path, std::vector<int>{0, 2, 1, 3}));
  EXPECT_FALSE(is_hamilton_path(cycle(5), std::vector<int>{0, 1, 2, 3, 3}));
  EXPECT_FALSE(is_hamilton_path(cycle(5), std::vector<int>{0, 1, 2, 3}));
  EXPECT_FALSE(is_hamilton_path(cycle(5), std::vector<int>{0, 1, 2, 3, 7}));
}

TEST(GenerateLowDegree, FourVerticesGivesK4) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = generate_low_degree(4, seed, {3, 3});
    EXPECT_EQ(g.edge_count(), 6);
  }
}

TEST(GenerateLowDegree, DegreesConnectivityDeterminism) {
  for (int n : {5, 6, 10, 17, 40}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Graph g = generate_low_degree(n, seed);
      ASSERT_TRUE(is_connected(g));
      for (int v = 0; v < n; ++v) {
        EXPECT_GE(g.degree(v), 3);
        EXPECT_LE(g.degree(v), 4);
      }
      EXPECT_EQ(generate_low_degree(n, seed), g);
    }
  }
}

TEST(GenerateLowDegree, RejectsInfeasibleRequests) {
  EXPECT_THROW(generate_low_degree(5, 1, {3, 3}), InfeasibleDegreeSequence);
  EXPECT_THROW(generate_low_degree(3, 1), InfeasibleDegreeSequence);
}

TEST(PlantHamiltonian, SmallInstanceKeepsPathEdges) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = plant_hamiltonian(4, seed);
    ASSERT_EQ(inst.path.size(), 4u);
    EXPECT_EQ(inst.path.front(), 0);
    EXPECT_EQ(inst.path.back(), 3);
    EXPECT_TRUE(is_hamilton_path(inst.graph, inst.path));
  }
}

TEST(PlantHamiltonian, WitnessDegreesDeterminism) {
  auto inst = plant_hamiltonian(100, 7);
  EXPECT_TRUE(is_hamilton_path(inst.graph, inst.path));
  EXPECT_EQ(plant_hamiltonian(100, 7).graph, inst.graph);
  for (int n : {6, 11, 50, 101}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto p = plant_hamiltonian(n, seed);
      ASSERT_TRUE(is_hamilton_path(p.graph, p.path));
      EXPECT_EQ(p.path.front(), 0);
      EXPECT_EQ(p.path.back(), n - 1);
      for (int v = 0; v < n; ++v) {
        EXPECT_GE(p.graph.degree(v), 3);
        EXPECT_LE(p.graph.degree(v), 4);
      }
    }
  }
}

TEST(Relabel, PreservesStructure) {
  Graph g = parse_graph("4 3\n0 1\n1 2\n2 3");
  std::vector<int> perm{3, 2, 1, 0};
  Graph h = relabel(g, perm);
  EXPECT_TRUE(h.adjacent(3, 2));
  EXPECT_TRUE(h.adjacent(1, 0));
  EXPECT_EQ(h.edge_count(), 3);
}

TEST(RemoveVertex, ShiftsLabels) {
  Graph g = parse_graph("4 3\n0 1\n1 2\n2 3");
  Graph h = remove_vertex(g, 1);
  EXPECT_EQ(h.size(), 3);
  EXPECT_EQ(h.edge_count(), 1);
  EXPECT_TRUE(h.adjacent(1, 2));
}

}  // namespace
}  // namespace hpath
