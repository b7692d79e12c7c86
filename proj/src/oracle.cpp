#include "hpath/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hpath/report.hpp"

namespace hpath {

namespace {

OracleAnswer bitmask_dp(const Graph& g, EndpointMode endpoints) {
  const int n = g.size();
  if (n > kMaxDpVertices) {
    throw OracleTooLarge("bitmask DP supports at most " + std::to_string(kMaxDpVertices) +
                         " vertices, got " + std::to_string(n));
  }
  const bool fixed = endpoints == EndpointMode::kFixed;
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  // reach[mask] has bit v set iff some simple path visits exactly `mask`
  // and ends at v (starting at 0 in fixed mode).
  std::vector<std::uint32_t> reach(static_cast<std::size_t>(full) + 1, 0);
  if (fixed) {
    reach[1] = 1;
  } else {
    for (int v = 0; v < n; ++v) reach[1u << v] = 1u << v;
  }
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::uint32_t ends = reach[mask];
    if (fixed) ends &= ~(1u << (n - 1));  // n-1 may only close the path
    while (ends != 0) {
      int v = std::countr_zero(ends);
      ends &= ends - 1;
      for (int w : g.neighbors(v)) {
        if (!(mask >> w & 1u)) reach[mask | 1u << w] |= 1u << w;
      }
    }
  }

  OracleAnswer ans;
  ans.method = OracleMethod::kBitmaskDp;
  std::uint32_t final_ends = reach[full];
  if (fixed) final_ends &= 1u << (n - 1);
  if (final_ends == 0) return ans;

  ans.exists = true;
  VertexSequence path;
  int v = std::countr_zero(final_ends);
  std::uint32_t mask = full;
  path.push_back(v);
  while (std::popcount(mask) > 1) {
    std::uint32_t prev = mask & ~(1u << v);
    std::uint32_t cand = reach[prev];
    if (fixed) cand &= ~(1u << (n - 1));
    int u = -1;
    while (cand != 0) {
      int w = std::countr_zero(cand);
      cand &= cand - 1;
      if (g.adjacent(w, v)) {
        u = w;
        break;
      }
    }
    path.push_back(u);
    mask = prev;
    v = u;
  }
  std::reverse(path.begin(), path.end());
  ans.witness = std::move(path);
  return ans;
}

// Hamilton cycle search on g plus a hub vertex h = n. In fixed mode h is
// joined to 0 and n-1, otherwise to every vertex; removing h from a cycle
// leaves the path.
//
// Every edge is free, forced or deleted. A vertex with two usable edges
// forces both, a vertex with two forced edges loses the rest, and forced
// edges form path fragments whose closing edge is deleted until the fragment
// spans everything. Each node also probes every free edge both ways, and
// the usable edges must stay biconnected. The search branches on one free
// edge (force, then delete) at the vertex with the fewest free edges,
// preferring fragment ends.
class CycleSearch {
 public:
  CycleSearch(const Graph& g, EndpointMode mode, std::uint64_t budget)
      : n_(g.size()), total_(n_ + 1), budget_(budget), nbrs_(total_) {
    const int hub = n_;
    for (int u = 0; u < n_; ++u)
      for (int v : g.neighbors(u))
        if (u < v) add_edge(u, v);
    if (mode == EndpointMode::kFixed) {
      add_edge(0, hub);
      add_edge(n_ - 1, hub);
    } else {
      for (int v = 0; v < n_; ++v) add_edge(v, hub);
    }
    for (auto& list : nbrs_) std::sort(list.begin(), list.end());
    state_.assign(edges_.size(), kFree);
    avail_.assign(total_, 0);
    fdeg_.assign(total_, 0);
    end_.resize(total_);
    size_.assign(total_, 1);
    for (int v = 0; v < total_; ++v) {
      end_[v] = v;
      avail_[v] = static_cast<int>(nbrs_[v].size());
    }
  }

  std::optional<VertexSequence> run(EndpointMode mode) {
    for (int v = 0; v < total_; ++v) queue_.push_back(v);
    if (!search()) return std::nullopt;

    std::vector<std::array<int, 2>> next(total_, {-1, -1});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (state_[e] != kForced) continue;
      auto [u, v] = edges_[e];
      next[u][next[u][0] < 0 ? 0 : 1] = v;
      next[v][next[v][0] < 0 ? 0 : 1] = u;
    }
    VertexSequence path;
    int prev = n_, cur = next[n_][0];
    while (cur != n_) {
      path.push_back(cur);
      const int nxt = next[cur][0] == prev ? next[cur][1] : next[cur][0];
      prev = cur;
      cur = nxt;
    }
    if (mode == EndpointMode::kFixed && path.front() != 0) std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  enum : std::uint8_t { kFree, kForced, kDeleted };

  struct Change {
    int vertex;  // -1 for an edge change
    int a;       // edge id, or old end
    int b;       // old size
  };

  void add_edge(int u, int v) {
    const int id = static_cast<int>(edges_.size());
    edges_.emplace_back(u, v);
    nbrs_[u].emplace_back(v, id);
    nbrs_[v].emplace_back(u, id);
  }

  int edge_between(int u, int v) const {
    const auto& list = nbrs_[u];
    auto it = std::lower_bound(list.begin(), list.end(), std::pair{v, -1});
    return it != list.end() && it->first == v ? it->second : -1;
  }

  void set_end(int v, int end, int size) {
    trail_.push_back({v, end_[v], size_[v]});
    end_[v] = end;
    size_[v] = size;
  }

  void set_state(int e, std::uint8_t st) {
    trail_.push_back({-1, e, state_[e]});
    state_[e] = st;
    auto [u, v] = edges_[e];
    if (st == kDeleted) {
      --avail_[u];
      --avail_[v];
    } else {
      ++fdeg_[u];
      ++fdeg_[v];
    }
    queue_.push_back(u);
    queue_.push_back(v);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const Change c = trail_.back();
      trail_.pop_back();
      if (c.vertex >= 0) {
        end_[c.vertex] = c.a;
        size_[c.vertex] = c.b;
        continue;
      }
      auto [u, v] = edges_[c.a];
      if (state_[c.a] == kDeleted) {
        ++avail_[u];
        ++avail_[v];
      } else {
        --fdeg_[u];
        --fdeg_[v];
      }
      state_[c.a] = static_cast<std::uint8_t>(c.b);
    }
    queue_.clear();
    closed_ = false;
  }

  void remove(int e) {
    if (state_[e] == kFree) set_state(e, kDeleted);
  }

  bool force(int e) {
    if (state_[e] != kFree) return state_[e] == kForced;
    auto [u, v] = edges_[e];
    if (fdeg_[u] >= 2 || fdeg_[v] >= 2) return false;
    if (end_[u] == v) {
      // Closes the fragment into a cycle: only fine once it spans everything.
      if (size_[u] != total_) return false;
      set_state(e, kForced);
      closed_ = true;
      return true;
    }
    const int eu = end_[u], ev = end_[v];
    const int merged = size_[eu] + size_[ev];
    set_state(e, kForced);
    set_end(eu, ev, merged);
    set_end(ev, eu, merged);
    const int closing = edge_between(eu, ev);
    if (merged < total_) {
      if (closing >= 0) remove(closing);
    } else if (closing < 0 || !force(closing)) {
      return false;
    }
    return true;
  }

  bool propagate() {
    while (!queue_.empty()) {
      const int v = queue_.back();
      queue_.pop_back();
      if (avail_[v] < 2) return false;
      if (fdeg_[v] == 2 && avail_[v] > 2) {
        for (auto [w, e] : nbrs_[v]) remove(e);
      } else if (avail_[v] == 2 && fdeg_[v] < 2) {
        for (auto [w, e] : nbrs_[v]) {
          if (state_[e] == kFree && !force(e)) return false;
        }
      }
    }
    return true;
  }

  // Usable edges must form a connected graph without cut vertices, as a
  // Hamilton cycle does. Iterative Tarjan lowpoint search from vertex 0.
  bool biconnected() {
    disc_.assign(total_, -1);
    low_.assign(total_, 0);
    iter_.assign(total_, 0);
    parent_.assign(total_, -1);
    stack_.assign(1, 0);
    disc_[0] = low_[0] = 0;
    int time = 1, root_children = 0;
    while (!stack_.empty()) {
      const int v = stack_.back();
      auto& list = nbrs_[v];
      if (iter_[v] < static_cast<int>(list.size())) {
        auto [w, e] = list[iter_[v]++];
        if (state_[e] == kDeleted) continue;
        if (disc_[w] < 0) {
          disc_[w] = low_[w] = time++;
          parent_[w] = v;
          stack_.push_back(w);
          if (v == 0) ++root_children;
        } else if (w != parent_[v]) {
          low_[v] = std::min(low_[v], disc_[w]);
        }
        continue;
      }
      stack_.pop_back();
      if (v == 0) continue;
      const int p = parent_[v];
      low_[p] = std::min(low_[p], low_[v]);
      if (p != 0 && low_[v] >= disc_[p]) return false;
    }
    if (root_children > 1) return false;
    return time == total_;
  }

  int pick_edge() const {
    int best_v = -1, best_free = 0;
    for (int v = 0; v < total_; ++v) {
      if (fdeg_[v] >= 2) continue;
      const int free = avail_[v] - fdeg_[v];
      // Fragment ends first, then fewest free edges.
      const bool better = best_v < 0 || (fdeg_[v] > fdeg_[best_v]) ||
                          (fdeg_[v] == fdeg_[best_v] && free < best_free);
      if (better) {
        best_v = v;
        best_free = free;
      }
    }
    int best_e = -1, best_avail = 0;
    for (auto [w, e] : nbrs_[best_v]) {
      if (state_[e] != kFree) continue;
      if (best_e < 0 || avail_[w] < best_avail) {
        best_e = e;
        best_avail = avail_[w];
      }
    }
    return best_e;
  }

  // Tries each free edge both ways; a choice that propagates to a
  // contradiction fixes the edge the other way. Repeats to a fixpoint.
  bool probe() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        if (state_[e] != kFree) continue;
        for (bool try_force : {true, false}) {
          const std::size_t mark = trail_.size();
          bool ok = try_force ? force(e) && propagate() : (remove(e), propagate());
          if (ok && closed_) return true;
          undo(mark);
          if (ok) continue;
          if (try_force) {
            remove(e);
          } else if (!force(e)) {
            return false;
          }
          if (!propagate()) return false;
          if (closed_) return true;
          changed = true;
          break;
        }
      }
    }
    return true;
  }

  bool search() {
    if (++nodes_ > budget_) throw OracleUnknown("backtracking node budget exhausted");
    if (!propagate()) return false;
    if (closed_) return true;
    if (!probe()) return false;
    if (closed_) return true;
    if (!biconnected()) return false;
    const int e = pick_edge();
    if (e < 0) return false;

    const std::size_t mark = trail_.size();
    if (force(e) && search()) return true;
    undo(mark);
    remove(e);
    if (search()) return true;
    undo(mark);
    return false;
  }

  int n_;
  int total_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<std::pair<int, int>>> nbrs_;  // (neighbor, edge id), sorted
  std::vector<std::uint8_t> state_;
  std::vector<int> avail_;
  std::vector<int> fdeg_;
  std::vector<int> end_;   // other end of the fragment, valid at fragment ends
  std::vector<int> size_;  // fragment vertex count, valid at fragment ends
  bool closed_ = false;
  std::vector<Change> trail_;
  std::vector<int> queue_;
  std::vector<int> disc_;
  std::vector<int> low_;
  std::vector<int> iter_;
  std::vector<int> parent_;
  std::vector<int> stack_;
};

}  // namespace

OracleAnswer oracle_has_hpath(const Graph& g, EndpointMode endpoints, OracleOptions opts) {
  if (g.size() < 1) throw std::invalid_argument("empty graph");
  OracleMethod method = opts.method.value_or(g.size() <= kMaxDpVertices
                                                 ? OracleMethod::kBitmaskDp
                                                 : OracleMethod::kBacktracking);
  if (method == OracleMethod::kBitmaskDp) return bitmask_dp(g, endpoints);

  OracleAnswer ans;
  ans.method = OracleMethod::kBacktracking;
  if (g.size() == 1) {
    ans.exists = true;
    ans.witness = VertexSequence{0};
    return ans;
  }
  if (auto p = CycleSearch(g, endpoints, opts.node_budget).run(endpoints)) {
    ans.exists = true;
    ans.witness = std::move(p);
  }
  return ans;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kAgree: return "Agree";
    case Verdict::kSolverUnsound: return "SolverUnsound";
    case Verdict::kSolverIncomplete: return "SolverIncomplete";
    case Verdict::kBudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

CrossCheck cross_check(const Graph& g, const SearchOutcome& outcome, const SolverConfig& cfg,
                       const std::optional<std::filesystem::path>& export_dir) {
  CrossCheck out;
  switch (outcome.kind) {
    case ResultKind::kHamiltonPath: {
      bool ok = is_hamilton_path(g, outcome.path);
      if (ok && cfg.mode == EndpointMode::kFixed) {
        ok = outcome.path.front() == 0 && outcome.path.back() == g.size() - 1;
      }
      out.verdict = ok ? Verdict::kAgree : Verdict::kSolverUnsound;
      return out;
    }
    case ResultKind::kBudgetExceeded:
      out.verdict = Verdict::kBudgetExceeded;
      return out;
    case ResultKind::kNoPathClaim:
      break;
  }
  out.oracle = oracle_has_hpath(g, cfg.mode);
  out.verdict = out.oracle->exists ? Verdict::kSolverIncomplete : Verdict::kAgree;
  if (out.verdict == Verdict::kSolverIncomplete && export_dir) {
    out.counterexample = write_counterexample(*export_dir, g, cfg, outcome);
  }
  return out;
}

bool reproduces_incomplete(const Graph& g, const SolverConfig& cfg) {
  if (g.size() < 1) return false;
  SolverConfig quiet = cfg;
  quiet.trace = false;
  if (find_h_path(g, quiet).kind != ResultKind::kNoPathClaim) return false;
  try {
    return oracle_has_hpath(g, cfg.mode).exists;
  } catch (const OracleTooLarge&) {
    return false;
  } catch (const OracleUnknown&) {
    return false;
  }
}

Graph minimize_graph(Graph g, const std::function<bool(const Graph&)>& keep) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : g.edges()) {
      Graph smaller = g;
      smaller.remove_edge(e.u, e.v);
      if (keep(smaller)) {
        g = std::move(smaller);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (int v = 0; v < g.size() && g.size() > 1; ++v) {
      Graph smaller = remove_vertex(g, v);
      if (keep(smaller)) {
        g = std::move(smaller);
        changed = true;
        break;
      }
    }
  }
  return g;
}

Graph minimize_counterexample(const Graph& g, const SolverConfig& cfg) {
  if (!reproduces_incomplete(g, cfg)) {
    throw NotAFailure("graph does not reproduce a SolverIncomplete verdict");
  }
  return minimize_graph(g, [&cfg](const Graph& h) { return reproduces_incomplete(h, cfg); });
}

std::filesystem::path write_counterexample(const std::filesystem::path& dir, const Graph& g,
                                           const SolverConfig& cfg, const SearchOutcome& outcome,
                                           const std::string& note) {
  const std::string body = serialize_graph(g);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : body) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream name;
  name << "cex-" << std::hex << std::setw(16) << std::setfill('0') << h << ".txt";
  std::filesystem::create_directories(dir);
  const auto path = dir / name.str();

  std::ofstream out(path);
  out << "# verdict: SolverIncomplete\n";
  if (!note.empty()) out << "# note: " << note << '\n';
  out << "# config: " << to_line(to_json(cfg)) << '\n';
  out << "# outcome: " << to_line(to_json(outcome)) << '\n';
  out << "# trace: " << (outcome.trace ? to_line(to_json(*outcome.trace)) : "null") << '\n';
  out << body;
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return path;
}

}  // namespace hpath
