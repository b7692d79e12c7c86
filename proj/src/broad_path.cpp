#include "hpath/broad_path.hpp"

#include <algorithm>
#include <tuple>

namespace hpath {

std::vector<int> compute_breaks(const Graph& g, std::span<const int> s) {
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!g.adjacent(s[i], s[i + 1])) out.push_back(static_cast<int>(i));
  }
  return out;
}

BroadPath make_broad_path(const Graph& g, VertexSequence order, std::optional<VertexPair> main) {
  BroadPath p;
  p.breaks = compute_breaks(g, order);
  p.order = std::move(order);
  if (main) {
    for (int pos : p.breaks) {
      if (VertexPair(p.order[pos], p.order[pos + 1]) == *main) p.main_break = pos;
    }
    if (p.main_break < 0) throw std::invalid_argument("main pair is not a break point");
  } else if (!p.breaks.empty()) {
    p.main_break = p.breaks.front();
  }
  return p;
}

VertexSequence splice_segment(std::span<const int> s, int gap, int lo, int hi, bool reversed) {
  const int n = static_cast<int>(s.size());
  if (lo > hi || lo < 1 || hi > n - 2) throw StructuralError("segment out of range");
  if (gap < 0 || gap > n - 2) throw StructuralError("gap out of range");
  if (!(gap + 1 < lo || gap > hi)) throw StructuralError("gap overlaps segment");

  VertexSequence out;
  out.reserve(n);
  auto put_segment = [&] {
    if (reversed) {
      for (int i = hi; i >= lo; --i) out.push_back(s[i]);
    } else {
      for (int i = lo; i <= hi; ++i) out.push_back(s[i]);
    }
  };
  for (int i = 0; i < n; ++i) {
    if (i >= lo && i <= hi) continue;
    out.push_back(s[i]);
    if (i == gap) put_segment();
  }
  return out;
}

VertexSequence cut_and_insert(std::span<const int> s, const CutMove& m) {
  // Sequence order of the segment is b..c on the left side and c..b on the right.
  bool reversed = (m.orientation == Orientation::kReversed) != (m.side == Side::kRight);
  return splice_segment(s, m.gap, m.seg_lo, m.seg_hi, reversed);
}

Ledger::Ledger(int n, LedgerMode mode) : n_(n), mode_(mode) {
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  used_[0].assign(cells, 0);
  if (mode_ == LedgerMode::kSplit) used_[1].assign(cells, 0);
}

bool Ledger::available(VertexPair p, int break_count) const {
  return used_[table_for(break_count)][index(p)] == 0;
}

bool Ledger::consume(VertexPair p, int break_count) {
  const std::size_t t = table_for(break_count);
  auto& cell = used_[t][index(p)];
  if (cell != 0) return false;
  cell = 1;
  ++consumed_[t];
  return true;
}

void Ledger::reset() {
  for (auto& table : used_) std::fill(table.begin(), table.end(), 0);
}

namespace {

struct Keyed {
  std::tuple<int, int, int, int, int> key;
  CutMove move;
};

}  // namespace

std::vector<CutMove> enumerate_moves(const Graph& g, const BroadPath& p, const Ledger& led,
                                     bool heal_secondary) {
  const int parent_breaks = p.break_count();
  if (parent_breaks < 1 || parent_breaks > 2 || p.main_break < 0) {
    throw std::invalid_argument("enumerate_moves needs a 1- or 2-break state with a main break");
  }
  const auto& s = p.order;
  const int n = static_cast<int>(s.size());
  const int m = p.main_break;
  int secondary = -1;
  for (int b : p.breaks) {
    if (b != m) secondary = b;
  }

  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[s[i]] = i;

  std::vector<Keyed> found;
  std::vector<int> gaps;

  auto emit = [&](CutMove mv, int variant) {
    int child_breaks = child_break_count(parent_breaks, mv.do_class, mv.heals);
    if (mv.new_main && !led.available(*mv.new_main, child_breaks)) return;
    found.push_back({{static_cast<int>(mv.side), mv.gap, mv.outer(),
                      static_cast<int>(mv.orientation), variant},
                     mv});
  };

  for (Side side : {Side::kLeft, Side::kRight}) {
    int c = 0, d = 0, first = 0, last = -1;
    if (side == Side::kLeft) {
      c = s[m];
      d = s[m + 1];
      first = 1;
      last = m;
    } else {
      c = s[m + 1];
      d = s[m];
      first = m + 1;
      last = n - 2;
    }
    for (int j = first; j <= last; ++j) {
      int lo = side == Side::kLeft ? j : m + 1;
      int hi = side == Side::kLeft ? m : j;
      int b = s[j];
      int a_pos = side == Side::kLeft ? j - 1 : j + 1;
      int a = s[a_pos];
      int cut_junction = side == Side::kLeft ? j - 1 : j;
      const bool cut_heals = cut_junction == secondary;
      if (cut_heals && !heal_secondary) continue;
      const bool ad = g.adjacent(a, d);

      for (Orientation orient : {Orientation::kForward, Orientation::kReversed}) {
        const int left = orient == Orientation::kForward ? b : c;
        const int right = orient == Orientation::kForward ? c : b;
        // Every accepted move has at least one adjacent gap junction, so
        // candidate gaps come from the neighbors of the inserted ends.
        gaps.clear();
        for (int x : g.neighbors(left)) gaps.push_back(pos[x]);
        for (int y : g.neighbors(right)) gaps.push_back(pos[y] - 1);
        std::sort(gaps.begin(), gaps.end());
        gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());

        for (int gp : gaps) {
          if (gp < 0 || gp > n - 2) continue;
          if (!(gp + 1 < lo || gp > hi)) continue;
          const bool heals = cut_heals || gp == secondary;
          if (heals && !heal_secondary) continue;
          const int x = s[gp];
          const int y = s[gp + 1];
          const bool jx = g.adjacent(x, left);
          const bool jy = g.adjacent(right, y);
          const int broken = !ad + !jx + !jy;

          CutMove mv;
          mv.gap = gp;
          mv.seg_lo = lo;
          mv.seg_hi = hi;
          mv.side = side;
          mv.orientation = orient;
          mv.x = x;
          mv.y = y;
          mv.a = a;
          mv.b = b;
          mv.c = c;
          mv.d = d;
          mv.heals = heals;
          const int remaining = parent_breaks - 1 - (heals ? 1 : 0);

          if (broken == 0) {
            mv.do_class = DoClass::kDo0;
            if (remaining == 1) mv.new_main = VertexPair(s[secondary], s[secondary + 1]);
            emit(mv, 0);
          } else if (broken == 1) {
            mv.do_class = DoClass::kDo1;
            if (!ad) {
              mv.new_main = VertexPair(a, d);
            } else if (!jx) {
              mv.new_main = VertexPair(x, left);
            } else {
              mv.new_main = VertexPair(right, y);
            }
            emit(mv, 0);
          } else if (broken == 2 && !ad && remaining == 0) {
            mv.do_class = DoClass::kDo2;
            mv.new_main = !jx ? VertexPair(x, left) : VertexPair(right, y);
            emit(mv, 0);
            mv.new_main = VertexPair(a, d);
            emit(mv, 1);
          }
        }
      }
    }
  }

  std::sort(found.begin(), found.end(),
            [](const Keyed& l, const Keyed& r) { return l.key < r.key; });
  std::vector<CutMove> out;
  out.reserve(found.size());
  for (auto& k : found) out.push_back(k.move);
  return out;
}

bool StateSet::insert(const BroadPath& p) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  };
  for (int v : p.order) mix(static_cast<std::uint64_t>(v));
  if (p.main_break >= 0) {
    auto mp = p.main_pair();
    mix(static_cast<std::uint64_t>(mp.u) << 32 | static_cast<std::uint32_t>(mp.v));
  }
  return seen_.insert(h).second;
}

Expansion expand(const Graph& g, const BroadPath& p, Ledger& led, StateSet* dedup,
                 bool heal_secondary) {
  Expansion out;
  const auto moves = enumerate_moves(g, p, led, heal_secondary);
  const int parent_breaks = p.break_count();

  for (const auto& mv : moves) {
    if (child_break_count(parent_breaks, mv.do_class, mv.heals) == 0) {
      out.hamilton = cut_and_insert(p.order, mv);
      out.hamilton_move = mv;
      return out;
    }
  }

  for (DoClass cls : {DoClass::kDo0, DoClass::kDo1, DoClass::kDo2}) {
    for (const auto& mv : moves) {
      if (mv.do_class != cls) continue;
      const int child_breaks = child_break_count(parent_breaks, cls, mv.heals);
      if (!led.available(*mv.new_main, child_breaks)) continue;
      BroadPath child = make_broad_path(g, cut_and_insert(p.order, mv), mv.new_main);
      if (dedup != nullptr && !dedup->insert(child)) continue;
      led.consume(*mv.new_main, child_breaks);
      out.children.push_back({std::move(child), mv});
    }
  }
  return out;
}

}  // namespace hpath
