#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "hpath/graph.hpp"

namespace hpath {

/// A permutation of all vertices with order.front() == 0 and
/// order.back() == n-1. Consecutive pairs that are not edges are break
/// points; `main_break` is the position of the one the next moves target.
struct BroadPath {
  VertexSequence order;
  std::vector<int> breaks;  // positions i with order[i] !~ order[i+1]
  int main_break = -1;      // a member of breaks, or -1 when breaks is empty

  VertexPair main_pair() const { return {order[main_break], order[main_break + 1]}; }
  int break_count() const { return static_cast<int>(breaks.size()); }
};

/// Positions i where s[i] and s[i+1] are not adjacent, ascending.
std::vector<int> compute_breaks(const Graph& g, std::span<const int> s);

/// Builds a BroadPath with breaks recomputed; `main` must be one of them.
BroadPath make_broad_path(const Graph& g, VertexSequence order, std::optional<VertexPair> main);

enum class Side : std::uint8_t { kLeft, kRight };
enum class Orientation : std::uint8_t { kForward, kReversed };
enum class DoClass : std::uint8_t { kDo0 = 0, kDo1 = 1, kDo2 = 2 };

/// One cut-and-insert. For side kLeft the pattern reads
///   0 .. x y .. a [b .. c] * d .. n-1
/// and for kRight it is mirrored: 0 .. d * [c .. b] a .. with c abutting the
/// main break from the right. The gap (x, y) may sit on either side of the
/// break. Forward orientation splices the segment as "x b .. c y", reversed
/// as "x c .. b y".
struct CutMove {
  int gap = 0;     // positions gap, gap+1 hold x, y
  int seg_lo = 0;  // segment positions, inclusive
  int seg_hi = 0;
  Side side = Side::kLeft;
  Orientation orientation = Orientation::kForward;
  DoClass do_class = DoClass::kDo0;
  int x = 0, y = 0, a = 0, b = 0, c = 0, d = 0;
  std::optional<VertexPair> new_main;
  /// The gap or the cut junction (a, b) is the parent's secondary break, so
  /// the move removes it.
  bool heals = false;

  int outer() const { return side == Side::kLeft ? seg_lo : seg_hi; }
  /// Vertex spliced next to x.
  int inserted_left() const { return orientation == Orientation::kForward ? b : c; }
  /// Vertex spliced next to y.
  int inserted_right() const { return orientation == Orientation::kForward ? c : b; }
  /// The three junctions created by the move: (a,d), (x,left), (right,y).
  std::array<VertexPair, 3> new_junctions() const {
    return {VertexPair(a, d), VertexPair(x, inserted_left()), VertexPair(inserted_right(), y)};
  }

  friend bool operator==(const CutMove&, const CutMove&) = default;
};

class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pure sequence surgery: excise s[lo..hi] and splice it into the gap
/// between s[gap] and s[gap+1], reversed when `reversed` is set. Throws
/// StructuralError if the gap touches the segment or the segment covers an
/// endpoint.
VertexSequence splice_segment(std::span<const int> s, int gap, int lo, int hi, bool reversed);

/// Applies a move. Orientation is interpreted against the b/c naming, so a
/// forward kRight move reverses the sequence order of its segment.
VertexSequence cut_and_insert(std::span<const int> s, const CutMove& m);

enum class LedgerMode : std::uint8_t { kUnified, kSplit };

/// Availability table over unordered vertex pairs for main break points.
/// In split mode one table serves one-break states and a second table serves
/// two-break states.
class Ledger {
 public:
  Ledger(int n, LedgerMode mode);

  LedgerMode mode() const { return mode_; }
  bool available(VertexPair p, int break_count) const;
  /// Marks p consumed; returns false if it already was.
  bool consume(VertexPair p, int break_count);
  void reset();

  /// Entries consumed since construction (not cleared by reset), per table.
  const std::array<std::int64_t, 2>& consumed() const { return consumed_; }

 private:
  std::size_t table_for(int break_count) const {
    return mode_ == LedgerMode::kSplit && break_count >= 2 ? 1 : 0;
  }
  std::size_t index(VertexPair p) const { return static_cast<std::size_t>(p.u) * n_ + p.v; }

  int n_;
  LedgerMode mode_;
  std::array<std::vector<std::uint8_t>, 2> used_;
  std::array<std::int64_t, 2> consumed_{0, 0};
};

/// Every cut-and-insert of `p` that the class rules accept, in the order
/// (side, gap, outer boundary, orientation); a Do2 configuration yields the
/// gap-junction main before the (a,d) main. Moves whose new main pair is
/// unavailable in `led` are dropped. Moves that would dissolve the secondary
/// break of a two-break parent are generated only with `heal_secondary`.
std::vector<CutMove> enumerate_moves(const Graph& g, const BroadPath& p, const Ledger& led,
                                     bool heal_secondary = false);

/// Break count of the child produced by a move of class `cls` from a parent
/// with `parent_breaks`.
inline int child_break_count(int parent_breaks, DoClass cls, bool heals = false) {
  return parent_breaks - 1 - (heals ? 1 : 0) + static_cast<int>(cls);
}

struct Child {
  BroadPath path;
  CutMove move;
};

struct Expansion {
  std::optional<VertexSequence> hamilton;
  std::optional<CutMove> hamilton_move;
  std::vector<Child> children;
};

/// Optional duplicate-state filter keyed on (order, main pair).
class StateSet {
 public:
  /// Returns true if the state was not seen before.
  bool insert(const BroadPath& p);
  void clear() { seen_.clear(); }

 private:
  std::unordered_set<std::uint64_t> seen_;
};

/// Expands one state: stops at the first move that leaves no break,
/// otherwise keeps Do0 children, then Do1, then Do2. Each kept child
/// consumes its main pair in `led` at the moment it is kept.
Expansion expand(const Graph& g, const BroadPath& p, Ledger& led, StateSet* dedup = nullptr,
                 bool heal_secondary = false);

}  // namespace hpath
