#pragma once

// Slow, obviously-correct reference implementations used as test oracles.

#include <cstdint>
#include <random>
#include <vector>

#include "hpath/broad_path.hpp"
#include "hpath/graph.hpp"
#include "hpath/sat.hpp"
#include "hpath/solver.hpp"

namespace hpath::testing {

/// Tries every vertex order (every interior order in fixed mode).
bool naive_has_hpath(const Graph& g, EndpointMode mode);

/// Connected labeled graphs on n vertices with maximum degree <= max_degree,
/// counted by scanning all 2^(n(n-1)/2) edge sets. n <= 7.
std::uint64_t labeled_connected_count(int n, int max_degree);

/// Automorphisms by scanning all n! permutations.
std::uint64_t automorphism_count(const Graph& g);

/// True when some permutation maps a onto b.
bool isomorphic(const Graph& a, const Graph& b);

/// Every cut-and-insert of p under the class rules, found by trying every
/// gap position for every segment and orientation. Same order as
/// enumerate_moves.
std::vector<CutMove> naive_moves(const Graph& g, const BroadPath& p, const Ledger& led,
                                 bool heal_secondary = false);

/// Truth-table satisfiability.
bool brute_sat(const Formula& f);

/// One representative per class of formulas over at most `max_vars`
/// variables with at most `max_clauses` clauses of width 1..3 (distinct
/// variables within a clause), up to variable permutation and polarity
/// flips. Variables are compacted to 0..k-1.
std::vector<Formula> formulas_up_to_renaming(int max_vars, int max_clauses);

Formula random_formula(std::mt19937_64& rng, int max_vars, int max_clauses);

Graph random_graph(std::mt19937_64& rng, int n, double p);

struct RandomState {
  Graph graph;
  BroadPath path;
};

/// Random graph and a random order (endpoints fixed) that has exactly
/// `breaks` break points: the graph is patched with edges across every other
/// non-adjacent consecutive pair. The main break is picked at random.
RandomState random_state(std::mt19937_64& rng, int n, double p, int breaks);

}  // namespace hpath::testing
