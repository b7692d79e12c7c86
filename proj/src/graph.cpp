#include "hpath/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

#include "rng.hpp"

namespace hpath {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
  lists_.resize(n);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw InvalidEdge("vertex out of range: " + std::to_string(u) + " " + std::to_string(v));
  }
  if (u == v) throw InvalidEdge("self-loop at " + std::to_string(u));
  if (adjacent(u, v)) {
    throw InvalidEdge("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  }
  adj_[static_cast<std::size_t>(u) * n_ + v] = 1;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
  lists_[u].push_back(v);
  lists_[v].push_back(u);
  ++edge_count_;
}

bool Graph::remove_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v || !adjacent(u, v)) return false;
  adj_[static_cast<std::size_t>(u) * n_ + v] = 0;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 0;
  std::erase(lists_[u], v);
  std::erase(lists_[v], u);
  --edge_count_;
  return true;
}

std::vector<VertexPair> Graph::edges() const {
  std::vector<VertexPair> out;
  out.reserve(edge_count_);
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

// Splits a line into integer tokens. Returns false on a non-integer token.
bool read_ints(std::string_view line, std::vector<long long>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec != std::errc() || ptr != line.data() + j) return false;
    out.push_back(value);
    i = j;
  }
  return true;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::vector<long long> tokens;
  int line_no = 0;
  bool have_header = false;
  long long n = 0;
  long long m = 0;
  long long seen = 0;
  Graph g;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!read_ints(line, tokens)) throw ParseError(line_no, "expected integers");
    if (tokens.size() != 2) throw ParseError(line_no, "expected two integers");
    if (!have_header) {
      n = tokens[0];
      m = tokens[1];
      if (n < 1 || n > 1'000'000) throw ParseError(line_no, "vertex count out of range");
      if (m < 0 || m > n * (n - 1) / 2) throw ParseError(line_no, "edge count out of range");
      g = Graph(static_cast<int>(n));
      have_header = true;
    } else {
      if (seen >= m) throw ParseError(line_no, "more edges than declared");
      long long u = tokens[0];
      long long v = tokens[1];
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw InvalidEdge("line " + std::to_string(line_no) + ": vertex out of range");
      }
      try {
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
      } catch (const InvalidEdge& e) {
        throw InvalidEdge("line " + std::to_string(line_no) + ": " + e.what());
      }
      ++seen;
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (seen != m) throw ParseError(line_no, "fewer edges than declared");
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

namespace {

// Adds random chords to `g` until every degree lies in [lo, hi]. Vertices
// below lo are paired with each other first, then with any vertex below hi.
bool complete_degrees(Graph& g, int lo, int hi, std::mt19937_64& rng) {
  const int n = g.size();
  std::vector<int> candidates;
  for (;;) {
    std::vector<int> deficient;
    for (int v = 0; v < n; ++v) {
      if (g.degree(v) < lo) deficient.push_back(v);
    }
    if (deficient.empty()) return true;
    int u = deficient[detail::uniform_index(rng, deficient.size())];
    candidates.clear();
    for (int v : deficient) {
      if (v != u && !g.adjacent(u, v) && g.degree(v) < hi) candidates.push_back(v);
    }
    if (candidates.empty()) {
      for (int v = 0; v < n; ++v) {
        if (v != u && !g.adjacent(u, v) && g.degree(v) < hi) candidates.push_back(v);
      }
    }
    if (candidates.empty()) return false;
    g.add_edge(u, candidates[detail::uniform_index(rng, candidates.size())]);
  }
}

constexpr int kMaxAttempts = 1000;

}  // namespace

Graph generate_low_degree(int n, std::uint64_t seed, DegreeRange degrees) {
  if (n < 4) throw InfeasibleDegreeSequence("need at least 4 vertices");
  int lo = degrees.lo;
  int hi = std::min(degrees.hi, n - 1);
  if (lo < 2 || lo > hi) {
    throw InfeasibleDegreeSequence("no degree in [" + std::to_string(degrees.lo) + "," +
                                   std::to_string(degrees.hi) + "] fits " +
                                   std::to_string(n) + " vertices");
  }
  if (lo == hi && lo % 2 == 1 && n % 2 == 1) {
    throw InfeasibleDegreeSequence("odd degree sum");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> perm(n);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::iota(perm.begin(), perm.end(), 0);
    detail::shuffle(perm, rng);
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(perm[i], perm[(i + 1) % n]);
    if (complete_degrees(g, lo, hi, rng)) return g;
  }
  throw InfeasibleDegreeSequence("generator gave up after retries");
}

PlantedInstance plant_hamiltonian(int n, std::uint64_t seed) {
  if (n < 4) throw InfeasibleDegreeSequence("need at least 4 vertices");
  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::iota(order.begin(), order.end(), 0);
    detail::shuffle(order, rng, 1, static_cast<std::size_t>(n - 1));
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(order[i], order[i + 1]);
    if (complete_degrees(g, 3, 4, rng)) return {std::move(g), order};
  }
  throw InfeasibleDegreeSequence("planting gave up after retries");
}

bool is_permutation_of_vertices(int n, std::span<const int> s) {
  if (static_cast<int>(s.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : s) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

bool is_hamilton_path(const Graph& g, std::span<const int> s) {
  if (!is_permutation_of_vertices(g.size(), s)) return false;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!g.adjacent(s[i], s[i + 1])) return false;
  }
  return true;
}

bool is_connected(const Graph& g) {
  const int n = g.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

Graph remove_vertex(const Graph& g, int v) {
  Graph out(g.size() - 1);
  auto shift = [v](int w) { return w > v ? w - 1 : w; };
  for (const auto& e : g.edges()) {
    if (e.u == v || e.v == v) continue;
    out.add_edge(shift(e.u), shift(e.v));
  }
  return out;
}

Graph relabel(const Graph& g, std::span<const int> perm) {
  Graph out(g.size());
  for (const auto& e : g.edges()) out.add_edge(perm[e.u], perm[e.v]);
  return out;
}

}  // namespace hpath
