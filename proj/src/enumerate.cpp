#include "hpath/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace hpath {

namespace {

// Pairs (i, j), i < j, are ordered column by column: (0,1) (0,2) (1,2)
// (0,3) ... and the first pair owns the most significant bit. Fixing labels
// 0..j therefore fixes a prefix of the code.
int pair_bit(int n, int i, int j) {
  const int total = n * (n - 1) / 2;
  const int rank = j * (j - 1) / 2 + i;
  return total - 1 - rank;
}

std::vector<int> refine_colours(const Graph& g) {
  const int n = g.size();
  std::vector<int> colour(n);
  for (int v = 0; v < n; ++v) colour[v] = g.degree(v);
  int classes = -1;
  for (;;) {
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (int v = 0; v < n; ++v) {
      sig[v].first = colour[v];
      for (int w : g.neighbors(v)) sig[v].second.push_back(colour[w]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::map<std::pair<int, std::vector<int>>, int> ids;
    for (const auto& s : sig) ids.emplace(s, 0);
    int next = 0;
    for (auto& [key, id] : ids) id = next++;
    for (int v = 0; v < n; ++v) colour[v] = ids[sig[v]];
    if (next == classes) break;
    classes = next;
  }
  return colour;
}

class Canonizer {
 public:
  explicit Canonizer(const Graph& g) : g_(g), n_(g.size()) {
    auto colour = refine_colours(g);
    order_.resize(n_);
    for (int v = 0; v < n_; ++v) order_[v] = v;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return colour[a] < colour[b]; });
    cell_of_label_.resize(n_);
    for (int p = 0; p < n_; ++p) cell_of_label_[p] = colour[order_[p]];
    colour_ = std::move(colour);
    placed_.assign(n_, -1);
    used_.assign(n_, 0);
  }

  std::uint64_t run() {
    if (n_ <= 1) return 0;
    search(0, 0);
    return best_;
  }

 private:
  void search(int label, std::uint64_t code) {
    if (label == n_) {
      if (!have_best_ || code < best_) {
        best_ = code;
        have_best_ = true;
      }
      return;
    }
    for (int v = 0; v < n_; ++v) {
      if (used_[v] || colour_[v] != cell_of_label_[label]) continue;
      std::uint64_t next = code;
      for (int i = 0; i < label; ++i) {
        if (g_.adjacent(placed_[i], v)) next |= std::uint64_t{1} << pair_bit(n_, i, label);
      }
      if (have_best_ && label >= 1) {
        // Compare the fixed prefix: bits for all pairs within labels 0..label.
        const int fixed = (label + 1) * label / 2;
        const int total = n_ * (n_ - 1) / 2;
        const int shift = total - fixed;
        if ((next >> shift) > (best_ >> shift)) continue;
      }
      used_[v] = 1;
      placed_[label] = v;
      search(label + 1, next);
      used_[v] = 0;
    }
  }

  const Graph& g_;
  int n_;
  std::vector<int> colour_;
  std::vector<int> order_;
  std::vector<int> cell_of_label_;
  std::vector<int> placed_;
  std::vector<char> used_;
  std::uint64_t best_ = 0;
  bool have_best_ = false;
};

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  if (g.size() > kMaxCodedVertices) throw std::invalid_argument("graph too large to encode");
  return Canonizer(g).run();
}

Graph graph_from_code(int n, std::uint64_t code) {
  Graph g(n);
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (code >> pair_bit(n, i, j) & 1u) g.add_edge(i, j);
    }
  }
  return g;
}

std::vector<Graph> connected_graphs(int n, int max_degree) {
  if (n < 1 || n > kMaxCodedVertices) throw std::invalid_argument("n out of range");
  std::set<std::uint64_t> level{0};  // the single vertex
  for (int size = 2; size <= n; ++size) {
    std::set<std::uint64_t> grown;
    for (std::uint64_t code : level) {
      const Graph base = graph_from_code(size - 1, code);
      std::vector<int> open;
      for (int v = 0; v < size - 1; ++v) {
        if (base.degree(v) < max_degree) open.push_back(v);
      }
      const int k = static_cast<int>(open.size());
      for (std::uint32_t subset = 1; subset < (1u << k); ++subset) {
        if (std::popcount(subset) > max_degree) continue;
        Graph child(size);
        for (const auto& e : base.edges()) child.add_edge(e.u, e.v);
        for (int b = 0; b < k; ++b) {
          if (subset >> b & 1u) child.add_edge(open[b], size - 1);
        }
        grown.insert(canonical_code(child));
      }
    }
    level = std::move(grown);
  }
  std::vector<Graph> out;
  out.reserve(level.size());
  for (std::uint64_t code : level) out.push_back(graph_from_code(n, code));
  return out;
}

}  // namespace hpath
