#include "tilo/ordering.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>

#include "tilo/error.hpp"
#include "tilo/random.hpp"

namespace tilo {
namespace {

std::vector<std::size_t> positions_of(const WeightedGraph& g, std::span<const VertexId> order) {
  const std::size_t n = g.vertex_count();
  if (order.size() != n) throw DomainError("ordering does not cover the graph");
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pos(n, kUnset);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || pos[order[i]] != kUnset) throw DomainError("ordering is not a permutation");
    pos[order[i]] = i;
  }
  return pos;
}

Ordering relocate(std::span<const VertexId> order, std::size_t from, std::size_t to) {
  Ordering out(order.begin(), order.end());
  if (from < to) {
    std::rotate(out.begin() + static_cast<std::ptrdiff_t>(from),
                out.begin() + static_cast<std::ptrdiff_t>(from) + 1,
                out.begin() + static_cast<std::ptrdiff_t>(to) + 1);
  } else {
    std::rotate(out.begin() + static_cast<std::ptrdiff_t>(to),
                out.begin() + static_cast<std::ptrdiff_t>(from),
                out.begin() + static_cast<std::ptrdiff_t>(from) + 1);
  }
  return out;
}

// Multiplicity differences between two multisets of profile values. The
// first multiset sorts to a smaller width exactly when the entry at the
// largest key with a nonzero difference is negative.
class SparseDiff {
 public:
  void add(Weight key, int delta) {
    auto [it, inserted] = diff_.try_emplace(key, delta);
    if (!inserted && (it->second += delta) == 0) diff_.erase(it);
  }

  int top_sign() const {
    if (diff_.empty()) return 0;
    return diff_.rbegin()->second < 0 ? -1 : 1;
  }

  void clear() { diff_.clear(); }

 private:
  std::map<Weight, int> diff_;
};

// SparseDiff over a direct-address table, for graphs whose boundary values
// are few multiples of a common unit.
class DenseDiff {
 public:
  // Keys are slot indices in [0, slots).
  explicit DenseDiff(std::size_t slots) : count_(slots, 0), bits_((slots + 63) / 64, 0) {}

  void add(Weight key, int delta) {
    const auto k = static_cast<std::size_t>(key);
    const int was = count_[k];
    count_[k] = was + delta;
    if (was == 0) {
      bits_[k / 64] |= bit(k);
      if (static_cast<std::ptrdiff_t>(k) > top_) top_ = static_cast<std::ptrdiff_t>(k);
    } else if (was + delta == 0) {
      bits_[k / 64] &= ~bit(k);
      if (static_cast<std::ptrdiff_t>(k) == top_) seek_top();
    }
  }

  int top_sign() const {
    if (top_ < 0) return 0;
    return count_[static_cast<std::size_t>(top_)] < 0 ? -1 : 1;
  }

  void clear() {
    for (std::size_t w = 0; top_ >= 0 && w <= static_cast<std::size_t>(top_) / 64; ++w) {
      for (std::uint64_t word = bits_[w]; word != 0; word &= word - 1) {
        count_[w * 64 + static_cast<std::size_t>(std::countr_zero(word))] = 0;
      }
      bits_[w] = 0;
    }
    top_ = -1;
  }

 private:
  static std::uint64_t bit(std::size_t k) { return std::uint64_t{1} << (k % 64); }

  void seek_top() {
    auto w = static_cast<std::size_t>(top_) / 64;
    std::uint64_t word = bits_[w] & (bit(static_cast<std::size_t>(top_)) - 1);
    while (word == 0) {
      if (w == 0) {
        top_ = -1;
        return;
      }
      word = bits_[--w];
    }
    top_ = static_cast<std::ptrdiff_t>(w * 64 + static_cast<std::size_t>(std::bit_width(word))) - 1;
  }

  std::vector<int> count_;
  std::vector<std::uint64_t> bits_;
  std::ptrdiff_t top_ = -1;  // largest nonzero key
};

constexpr std::size_t kMaxDenseSlots = std::size_t{1} << 20;

// Relocation scans for one graph, reusing buffers across moves.
//
// Moving v from i to j < i turns prefix k in (j, i] into A_{k-1} + v; moving
// it to j > i turns prefix k in (i, j] into A_{k+1} - v. Only those entries
// change, so two candidates (or a candidate and the current ordering) are
// compared through the multiplicity differences of the changed entries,
// maintained one target position at a time.
class MoveSearch {
 public:
  explicit MoveSearch(const WeightedGraph& g) : g_(g) {
    Weight unit = 0;
    for (const Edge& e : g.edges()) unit = std::gcd(unit, e.w);
    if (unit > 0 && static_cast<std::uint64_t>(g.total_weight() / unit) < kMaxDenseSlots) {
      unit_ = unit;
      dense_.emplace(static_cast<std::size_t>(g.total_weight() / unit) + 1);
    }
  }

  std::optional<Ordering> first(std::span<const VertexId> order) {
    return dense_ ? first_with(*dense_, order) : first_with(sparse_, order);
  }

  std::optional<Ordering> steepest(std::span<const VertexId> order) {
    return dense_ ? steepest_with(*dense_, order) : steepest_with(sparse_, order);
  }

 private:
  struct Change {
    Weight current;
    Weight candidate;
  };

  bool load(std::span<const VertexId> order) {
    n_ = order.size();
    if (n_ < 2) {
      positions_of(g_, order);
      return false;
    }
    const BoundaryProfile profile = boundary_profile(g_, order);
    bounds_.assign(n_ + 1, 0);
    for (std::size_t k = 1; k < n_; ++k) bounds_[k] = profile[k - 1] / unit_;
    pos_ = positions_of(g_, order);
    to_position_.assign(n_, 0);
    before_.assign(n_ + 1, 0);
    return true;
  }

  void enter(std::span<const VertexId> order, std::size_t i) {
    const VertexId v = order[i];
    degree_ = g_.weighted_degree(v) / unit_;
    for (const Neighbor& nb : g_.neighbors(v)) to_position_[pos_[nb.vertex]] = nb.w / unit_;
    for (std::size_t m = 0; m < n_; ++m) before_[m + 1] = before_[m] + to_position_[m];
  }

  void leave(std::span<const VertexId> order, std::size_t i) {
    for (const Neighbor& nb : g_.neighbors(order[i])) to_position_[pos_[nb.vertex]] = 0;
  }

  Weight b(std::size_t k) const { return bounds_[k]; }
  Change left(std::size_t j) const { return {b(j + 1), b(j) + degree_ - 2 * before_[j]}; }
  Change right(std::size_t j) const { return {b(j), b(j + 1) - degree_ + 2 * before_[j + 1]}; }

  template <class Diff>
  static void apply(Diff& diff, Change c, int sign) {
    if (c.current == c.candidate) return;
    diff.add(c.candidate, sign);
    diff.add(c.current, -sign);
  }

  template <class Diff>
  std::optional<Ordering> first_with(Diff& diff, std::span<const VertexId> order) {
    if (!load(order)) return std::nullopt;
    for (std::size_t i = 0; i < n_; ++i) {
      enter(order, i);
      std::optional<std::size_t> found;
      diff.clear();
      for (std::size_t j = i; j-- > 0;) {
        apply(diff, left(j), +1);
        if (diff.top_sign() < 0) found = j;
      }
      if (!found) {
        diff.clear();
        for (std::size_t j = i + 1; j < n_; ++j) {
          apply(diff, right(j), +1);
          if (diff.top_sign() < 0) {
            found = j;
            break;
          }
        }
      }
      leave(order, i);
      if (found) return relocate(order, i, *found);
    }
    return std::nullopt;
  }

  // Best improving target of one scan direction, with its changed entries.
  struct ScanBest {
    std::optional<std::size_t> to;
    std::vector<Change> changes;
  };

  // Within a scan the diff holds candidate minus the scan's best so far, and
  // resets to empty whenever that best is replaced.
  template <class Diff>
  void scan_left(Diff& diff, std::size_t i, ScanBest& out) {
    diff.clear();
    out.to.reset();
    for (std::size_t j = i; j-- > 0;) {
      apply(diff, left(j), +1);
      const int sign = diff.top_sign();
      if (sign < 0 || (sign == 0 && out.to)) {  // ties go to the leftmost target
        out.to = j;
        diff.clear();
      }
    }
    out.changes.clear();
    if (out.to) {
      for (std::size_t j = i; j-- > *out.to;) out.changes.push_back(left(j));
    }
  }

  template <class Diff>
  void scan_right(Diff& diff, std::size_t i, ScanBest& out) {
    diff.clear();
    out.to.reset();
    for (std::size_t j = i + 1; j < n_; ++j) {
      apply(diff, right(j), +1);
      if (diff.top_sign() < 0) {
        out.to = j;
        diff.clear();
      }
    }
    out.changes.clear();
    if (out.to) {
      for (std::size_t j = i + 1; j <= *out.to; ++j) out.changes.push_back(right(j));
    }
  }

  // Scan results survive a move that only permuted positions [lo, hi]: a
  // left scan from i < lo and a right scan from i > hi read neither moved
  // positions nor changed profile entries.
  template <class Diff>
  std::optional<Ordering> steepest_with(Diff& diff, std::span<const VertexId> order) {
    if (!load(order)) return std::nullopt;
    std::size_t lo = 0, hi = n_ - 1;
    if (last_order_.size() == n_) {
      while (lo < n_ && last_order_[lo] == order[lo]) ++lo;
      if (lo == n_) {
        hi = 0;
      } else {
        while (last_order_[hi] == order[hi]) --hi;
      }
    } else {
      left_best_.assign(n_, {});
      right_best_.assign(n_, {});
    }
    const bool unchanged = lo == n_;
    last_order_.assign(order.begin(), order.end());

    for (std::size_t i = 0; i < n_; ++i) {
      const bool redo_left = !unchanged && i >= lo;
      const bool redo_right = !unchanged && i <= hi;
      if (!redo_left && !redo_right) continue;
      enter(order, i);
      if (redo_left) scan_left(diff, i, left_best_[i]);
      if (redo_right) scan_right(diff, i, right_best_[i]);
      leave(order, i);
    }

    // Earliest scan wins ties.
    const ScanBest* best = nullptr;
    std::size_t best_from = 0;
    auto consider = [&](const ScanBest& candidate, std::size_t from) {
      if (!candidate.to) return;
      if (best) {
        diff.clear();
        for (const Change& c : candidate.changes) apply(diff, c, +1);
        for (const Change& c : best->changes) apply(diff, c, -1);
        if (diff.top_sign() >= 0) return;
      }
      best = &candidate;
      best_from = from;
    };
    for (std::size_t i = 0; i < n_; ++i) {
      consider(left_best_[i], i);
      consider(right_best_[i], i);
    }
    if (!best) return std::nullopt;
    return relocate(order, best_from, *best->to);
  }

  const WeightedGraph& g_;
  std::optional<DenseDiff> dense_;
  SparseDiff sparse_;
  Weight unit_ = 1;  // all weights below are in multiples of this
  std::size_t n_ = 0;
  Weight degree_ = 0;
  std::vector<Weight> bounds_;  // boundary of the first k vertices, k = 0..n
  std::vector<std::size_t> pos_;
  std::vector<Weight> to_position_;  // weight from the moving vertex, by position
  std::vector<Weight> before_;       // before_[m]: weight to positions < m
  Ordering last_order_;
  std::vector<ScanBest> left_best_, right_best_;  // by position
};

}  // namespace

BoundaryProfile boundary_profile(const WeightedGraph& g, std::span<const VertexId> order) {
  const std::vector<std::size_t> pos = positions_of(g, order);
  const std::size_t n = order.size();
  if (n < 2) throw DomainError("boundary profile of a single-vertex component is empty");
  BoundaryProfile profile(n - 1);
  Weight b = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (const Neighbor& nb : g.neighbors(order[i])) {
      b += pos[nb.vertex] > i ? nb.w : -nb.w;
    }
    profile[i] = b;
  }
  return profile;
}

Width width_of(std::span<const Weight> profile) {
  Width w(profile.begin(), profile.end());
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

Comparison compare_widths(std::span<const Weight> a, std::span<const Weight> b) {
  if (a.size() != b.size()) throw DomainError("cannot compare widths of different lengths");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return Comparison::kLess;
    if (a[i] > b[i]) return Comparison::kGreater;
  }
  return Comparison::kEqual;
}

std::optional<Ordering> improving_move(const WeightedGraph& g, std::span<const VertexId> order) {
  return MoveSearch(g).first(order);
}

std::optional<Ordering> improving_move_reference(const WeightedGraph& g,
                                                 std::span<const VertexId> order) {
  const std::size_t n = order.size();
  if (n < 2) return std::nullopt;
  const Width current = width_of(boundary_profile(g, order));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Ordering candidate = relocate(order, i, j);
      if (compare_widths(width_of(boundary_profile(g, candidate)), current) == Comparison::kLess) {
        return candidate;
      }
    }
  }
  return std::nullopt;
}

std::optional<Ordering> steepest_move(const WeightedGraph& g, std::span<const VertexId> order) {
  return MoveSearch(g).steepest(order);
}

std::optional<Ordering> steepest_move_reference(const WeightedGraph& g, std::span<const VertexId> order) {
  const std::size_t n = order.size();
  if (n < 2) return std::nullopt;
  Width best = width_of(boundary_profile(g, order));
  std::optional<Ordering> chosen;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Ordering candidate = relocate(order, i, j);
      Width w = width_of(boundary_profile(g, candidate));
      if (compare_widths(w, best) == Comparison::kLess) {
        best = std::move(w);
        chosen = std::move(candidate);
      }
    }
  }
  return chosen;
}

Ordering random_ordering(std::size_t n, std::uint64_t seed) {
  Ordering order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<VertexId>(i);
  Rng rng(seed);
  rng.shuffle(order);
  return order;
}

FixpointResult tilo_fixpoint_traced(const WeightedGraph& g, std::uint64_t seed, bool record_trace,
                                    MoveRule rule) {
  if (g.vertex_count() < 2) throw DomainError("ordering search needs at least two vertices");
  if (connected_components(g).blocks.size() != 1) throw DomainError("ordering search needs a connected graph");

  FixpointResult result;
  result.order = random_ordering(g.vertex_count(), seed);
  if (record_trace) result.trace.push_back(width_of(boundary_profile(g, result.order)));
  MoveSearch search(g);
  auto step = [&] { return rule == MoveRule::kSteepest ? search.steepest(result.order) : search.first(result.order); };
  while (auto next = step()) {
    result.order = std::move(*next);
    ++result.moves;
    if (record_trace) result.trace.push_back(width_of(boundary_profile(g, result.order)));
  }
  return result;
}

std::vector<std::size_t> local_minima(std::span<const Weight> profile) {
  struct Run {
    Weight value;
    std::size_t first;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (runs.empty() || runs.back().value != profile[i]) runs.push_back({profile[i], i});
  }
  std::vector<std::size_t> minima;
  for (std::size_t t = 1; t + 1 < runs.size(); ++t) {
    if (runs[t - 1].value > runs[t].value && runs[t + 1].value > runs[t].value) {
      minima.push_back(runs[t].first + 1);
    }
  }
  return minima;
}

Partition extract_clusters(const WeightedGraph& g, std::span<const VertexId> order) {
  Partition part;
  if (order.size() < 2) {
    positions_of(g, order);
    if (!order.empty()) part.blocks.emplace_back(order.begin(), order.end());
    return part;
  }
  part.cuts = local_minima(boundary_profile(g, order));
  std::size_t start = 0;
  for (std::size_t cut : part.cuts) {
    part.blocks.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                             order.begin() + static_cast<std::ptrdiff_t>(cut));
    start = cut;
  }
  part.blocks.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start), order.end());
  return part;
}

}  // namespace tilo
