#include "hpath/sat.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace hpath {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_int(std::string_view tok, long long& value) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

Formula parse_cnf(std::string_view text) {
  Formula f;
  bool have_header = false;
  long long declared_clauses = 0;
  Clause current;
  int line_no = 0;
  int clause_line = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0][0] == 'c') continue;
    if (tokens[0] == "%") break;
    if (tokens[0] == "p") {
      long long v = 0;
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tokens.size() != 4 || tokens[1] != "cnf" || !to_int(tokens[2], v) ||
          !to_int(tokens[3], declared_clauses) || v < 0 || declared_clauses < 0) {
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      f.num_vars = static_cast<int>(v);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before header");
    for (auto tok : tokens) {
      long long lit = 0;
      if (!to_int(tok, lit)) throw ParseError(line_no, "bad literal '" + std::string(tok) + "'");
      if (current.empty()) clause_line = line_no;
      if (lit == 0) {
        for (std::size_t i = 0; i < current.size(); ++i) {
          for (std::size_t k = i + 1; k < current.size(); ++k) {
            if (current[i].var == current[k].var && current[i].negated != current[k].negated) {
              throw ParseError(clause_line, "clause contains a literal and its negation");
            }
          }
        }
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      long long var = lit < 0 ? -lit : lit;
      if (var > f.num_vars) throw ParseError(line_no, "variable exceeds header count");
      if (current.size() == 3) {
        throw ClauseTooWide("line " + std::to_string(clause_line) +
                            ": clause has more than three literals");
      }
      current.push_back({static_cast<int>(var - 1), lit < 0});
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header");
  if (!current.empty()) throw ParseError(line_no, "unterminated clause");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses) {
    throw ParseError(line_no, "clause count does not match header");
  }
  return f;
}

std::string serialize_cnf(const Formula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (const auto& l : c) out << (l.negated ? -(l.var + 1) : l.var + 1) << ' ';
    out << "0\n";
  }
  return out.str();
}

bool satisfies(const Formula& f, const Assignment& a) {
  if (static_cast<int>(a.size()) != f.num_vars) return false;
  for (const auto& c : f.clauses) {
    bool sat = false;
    for (const auto& l : c) sat = sat || (a[l.var] != l.negated);
    if (!sat) return false;
  }
  return true;
}

namespace {

// -1 unassigned, 0 false, 1 true.
using Partial = std::vector<signed char>;

int lit_value(const Partial& p, Literal l) {
  if (p[l.var] < 0) return -1;
  return (p[l.var] == 1) != l.negated ? 1 : 0;
}

bool dpll(const Formula& f, Partial& p) {
  // Unit propagation to a fixed point.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& c : f.clauses) {
      int unassigned = 0;
      Literal last{};
      bool sat = false;
      for (const auto& l : c) {
        int v = lit_value(p, l);
        if (v == 1) {
          sat = true;
          break;
        }
        if (v < 0) {
          ++unassigned;
          last = l;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        p[last.var] = last.negated ? 0 : 1;
        changed = true;
      }
    }
  }

  // Pure literals among unsatisfied clauses.
  std::vector<int> polarity(f.num_vars, 0);  // bit 1: positive, bit 2: negative
  int branch_var = -1;
  std::size_t best_width = ~std::size_t{0};
  for (const auto& c : f.clauses) {
    bool sat = false;
    std::size_t open = 0;
    for (const auto& l : c) {
      int v = lit_value(p, l);
      if (v == 1) sat = true;
      if (v < 0) ++open;
    }
    if (sat) continue;
    for (const auto& l : c) {
      if (p[l.var] < 0) {
        polarity[l.var] |= l.negated ? 2 : 1;
        if (open < best_width) {
          best_width = open;
          branch_var = l.var;
        }
      }
    }
  }
  bool pure = false;
  for (int v = 0; v < f.num_vars; ++v) {
    if (p[v] < 0 && (polarity[v] == 1 || polarity[v] == 2)) {
      p[v] = polarity[v] == 1 ? 1 : 0;
      pure = true;
    }
  }
  if (pure) return dpll(f, p);
  if (branch_var < 0) return true;  // every clause satisfied

  for (signed char value : {static_cast<signed char>(1), static_cast<signed char>(0)}) {
    Partial saved = p;
    p[branch_var] = value;
    if (dpll(f, p)) return true;
    p = std::move(saved);
  }
  return false;
}

}  // namespace

std::optional<Assignment> dpll_solve(const Formula& f) {
  Partial p(f.num_vars, -1);
  if (!dpll(f, p)) return std::nullopt;
  Assignment a(f.num_vars);
  for (int v = 0; v < f.num_vars; ++v) a[v] = p[v] == 1;
  return a;
}

int reduced_vertex_count(const Formula& f) {
  int n = 2 + 2 * f.num_vars;
  for (const auto& c : f.clauses) {
    n += c.empty() ? 1 : (1 + kWidgetSize) * std::max<int>(2, static_cast<int>(c.size()));
  }
  return n;
}

namespace {

// Widget vertex offsets: a1..a4 = 0..3, b1..b4 = 4..7.
constexpr int kA1 = 0, kA4 = 3, kB1 = 4, kB4 = 7;

void add_widget(Graph& g, int w) {
  for (int i = 0; i < 3; ++i) {
    g.add_edge(w + i, w + i + 1);
    g.add_edge(w + 4 + i, w + 5 + i);
  }
  g.add_edge(w + 0, w + 5);  // a1-b2
  g.add_edge(w + 1, w + 7);  // a2-b4
  g.add_edge(w + 2, w + 4);  // a3-b1
  g.add_edge(w + 3, w + 6);  // a4-b3
}

void add_chain(Graph& g, int from, const std::vector<int>& widgets, int to) {
  int prev = from;
  for (int w : widgets) {
    g.add_edge(prev, w + kB1);
    prev = w + kB4;
  }
  if (!g.adjacent(prev, to)) g.add_edge(prev, to);
}

}  // namespace

ReductionMap reduce_3sat(const Formula& f) {
  ReductionMap map;
  map.formula = f;
  map.widget_size = kWidgetSize;
  const int vars = f.num_vars;
  map.true_chain.resize(vars);
  map.false_chain.resize(vars);
  for (int i = 0; i < vars; ++i) map.var_anchor.emplace_back(1 + 2 * i, 2 + 2 * i);

  int next = 1 + 2 * vars;
  for (const auto& clause : f.clauses) {
    ClauseBlock block;
    block.first = next;
    if (clause.empty()) {
      block.size = 1;
    } else {
      block.slots = clause;
      if (block.slots.size() == 1) block.slots.push_back(clause[0]);
      const int k = static_cast<int>(block.slots.size());
      for (int s = 0; s < k; ++s) block.corners.push_back(next + s);
      for (int s = 0; s < k; ++s) {
        int w = next + k + kWidgetSize * s;
        block.widgets.push_back(w);
        const Literal lit = block.slots[s];
        (lit.negated ? map.false_chain : map.true_chain)[lit.var].push_back(w);
      }
      block.size = (1 + kWidgetSize) * k;
    }
    next += block.size;
    map.clause_block.push_back(std::move(block));
  }
  const int sink = next;
  Graph g(sink + 1);

  for (const auto& block : map.clause_block) {
    const int k = static_cast<int>(block.corners.size());
    for (int s = 0; s < k; ++s) {
      int w = block.widgets[s];
      add_widget(g, w);
      g.add_edge(block.corners[s], w + kA1);
      g.add_edge(w + kA4, block.corners[(s + 1) % k]);
    }
  }

  std::vector<int> entry{0};
  for (int i = 0; i < vars; ++i) {
    auto [l, r] = map.var_anchor[i];
    g.add_edge(entry.front(), l);
    add_chain(g, l, map.true_chain[i], r);
    add_chain(g, l, map.false_chain[i], r);
    entry = {r};
  }
  for (const auto& block : map.clause_block) {
    if (block.corners.empty()) continue;
    for (int u : entry) {
      for (int v : block.corners) g.add_edge(u, v);
    }
    entry = block.corners;
  }
  for (int u : entry) g.add_edge(u, sink);

  map.graph = std::move(g);
  return map;
}

Assignment decode_assignment(const VertexSequence& path, const ReductionMap& map) {
  const Graph& g = map.graph;
  const int n = g.size();
  if (!is_hamilton_path(g, path) || path.front() != 0 || path.back() != n - 1) {
    throw DecodeError("sequence is not a Hamilton path from source to sink");
  }
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[path[i]] = i;
  auto used = [&pos](int u, int v) { return std::abs(pos[u] - pos[v]) == 1; };

  const Formula& f = map.formula;
  Assignment a(f.num_vars, false);
  for (int i = 0; i < f.num_vars; ++i) {
    auto [l, r] = map.var_anchor[i];
    const auto& tc = map.true_chain[i];
    const auto& fc = map.false_chain[i];
    const bool t_used = used(l, tc.empty() ? r : tc.front() + kB1);
    const bool f_used = used(l, fc.empty() ? r : fc.front() + kB1);
    if (tc.empty() && fc.empty()) {
      a[i] = false;
    } else if (tc.empty()) {
      a[i] = !f_used;
    } else if (fc.empty()) {
      a[i] = t_used;
    } else {
      if (t_used == f_used) throw DecodeError("variable " + std::to_string(i + 1) +
                                              " uses both or neither chain");
      a[i] = t_used;
    }
  }
  if (!satisfies(f, a)) throw DecodeError("decoded assignment does not satisfy the formula");
  return a;
}

VertexSequence embed_assignment(const Assignment& a, const ReductionMap& map) {
  const Formula& f = map.formula;
  if (!satisfies(f, a)) throw std::invalid_argument("assignment does not satisfy the formula");
  const int n = map.graph.size();

  // Widget -> whether its clause leaves it to the chain alone.
  std::vector<char> skipped(n, 0);
  std::vector<int> witness_slot(map.clause_block.size(), -1);
  for (std::size_t j = 0; j < map.clause_block.size(); ++j) {
    const auto& block = map.clause_block[j];
    for (std::size_t s = 0; s < block.slots.size(); ++s) {
      const Literal l = block.slots[s];
      if (a[l.var] != l.negated) {
        witness_slot[j] = static_cast<int>(s);
        skipped[block.widgets[s]] = 1;
        break;
      }
    }
  }

  VertexSequence seq{0};
  for (int i = 0; i < f.num_vars; ++i) {
    auto [l, r] = map.var_anchor[i];
    seq.push_back(l);
    for (int w : a[i] ? map.true_chain[i] : map.false_chain[i]) {
      if (skipped[w]) {
        for (int off : {4, 2, 3, 6, 5, 0, 1, 7}) seq.push_back(w + off);  // b1 a3 a4 b3 b2 a1 a2 b4
      } else {
        for (int off : {4, 5, 6, 7}) seq.push_back(w + off);
      }
    }
    seq.push_back(r);
  }
  for (std::size_t j = 0; j < map.clause_block.size(); ++j) {
    const auto& block = map.clause_block[j];
    const int k = static_cast<int>(block.corners.size());
    const int s = witness_slot[j];
    for (int t = 0; t < k; ++t) {
      const int corner = (s + 1 + t) % k;
      seq.push_back(block.corners[corner]);
      if (t == k - 1) break;
      const int w = block.widgets[corner];
      const Literal l = block.slots[corner];
      if (a[l.var] != l.negated) {
        for (int off : {0, 1, 2, 3}) seq.push_back(w + off);
      } else {
        for (int off : {0, 5, 4, 2, 1, 7, 6, 3}) seq.push_back(w + off);  // a1 b2 b1 a3 a2 b4 b3 a4
      }
    }
  }
  seq.push_back(n - 1);
  return seq;
}

nlohmann::json decode_map_to_json(const ReductionMap& map) {
  using nlohmann::json;
  json clauses = json::array();
  for (const auto& block : map.clause_block) {
    json slots = json::array();
    for (const auto& l : block.slots) slots.push_back(l.negated ? -(l.var + 1) : l.var + 1);
    clauses.push_back({{"first", block.first},
                       {"size", block.size},
                       {"slots", slots},
                       {"corners", block.corners},
                       {"widgets", block.widgets}});
  }
  json vars = json::array();
  for (int i = 0; i < map.formula.num_vars; ++i) {
    vars.push_back({{"var", i + 1},
                    {"anchor", {map.var_anchor[i].first, map.var_anchor[i].second}},
                    {"true_chain", map.true_chain[i]},
                    {"false_chain", map.false_chain[i]}});
  }
  return {{"vertices", map.graph.size()},
          {"source", 0},
          {"sink", map.graph.size() - 1},
          {"widget_size", map.widget_size},
          {"variables", vars},
          {"clauses", clauses}};
}

}  // namespace hpath
