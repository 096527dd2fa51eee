#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tilo {

using VertexId = std::uint32_t;

// Edge weights are fixed-point integers so that boundary sums and width
// comparisons are exact. One unit is 1/kWeightScale.
using Weight = std::int64_t;
inline constexpr Weight kWeightScale = 1'000'000;

Weight weight_from_real(double value);
double weight_to_real(Weight w);

// Parses a decimal literal ("3", "0.25", "1e-3") into fixed point. Plain
// decimals with at most six fractional digits convert exactly.
Weight parse_weight(std::string_view text);

// Shortest decimal rendering that parse_weight maps back to the same value.
std::string format_weight(Weight w);

struct Edge {
  VertexId u;
  VertexId v;
  Weight w;
};

struct Neighbor {
  VertexId vertex;
  Weight w;
};

/// Undirected graph with nonnegative fixed-point edge weights.
///
/// Each undirected edge is stored once in edges() with u < v, sorted by
/// (u, v); adjacency lists are sorted by neighbor index. Immutable after
/// construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Zero-weight edges are dropped. Self-loops, negative weights, duplicate
  /// pairs, out-of-range endpoints and duplicate identifiers throw DomainError.
  WeightedGraph(std::vector<std::string> vertex_ids, std::vector<Edge> edges);

  /// Convenience for anonymous vertices named "0".."n-1".
  static WeightedGraph with_vertex_count(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& vertex_ids() const { return ids_; }
  const std::string& id(VertexId v) const { return ids_[v]; }
  std::optional<VertexId> find(std::string_view id) const;

  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool is_isolated(VertexId v) const { return degree(v) == 0; }

  // Sum of incident edge weights.
  Weight weighted_degree(VertexId v) const { return strength_[v]; }
  Weight total_weight() const { return total_weight_; }

  // 0 when u and v are not adjacent.
  Weight weight(VertexId u, VertexId v) const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<Weight> strength_;
  Weight total_weight_ = 0;
};

/// Subset of a graph's vertices with O(1) membership toggling.
class VertexSet {
 public:
  explicit VertexSet(std::size_t universe) : member_(universe, 0) {}
  VertexSet(std::size_t universe, std::span<const VertexId> members);

  std::size_t universe() const { return member_.size(); }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(VertexId v) const { return member_[v] != 0; }

  void insert(VertexId v);
  void erase(VertexId v);
  void toggle(VertexId v) { contains(v) ? erase(v) : insert(v); }

  VertexSet complement() const;
  std::vector<VertexId> members() const;

 private:
  std::vector<char> member_;
  std::size_t count_ = 0;
};

/// Total weight of edges with exactly one endpoint in `a`.
Weight boundary_size(const WeightedGraph& g, const VertexSet& a);
Weight boundary_size(const WeightedGraph& g, std::span<const VertexId> a);

/// Total weight of edges with both endpoints in `a`.
Weight internal_weight(const WeightedGraph& g, const VertexSet& a);

struct ComponentDecomposition {
  std::vector<std::vector<VertexId>> blocks;  // each sorted ascending
  std::vector<std::size_t> block_of;
};

// Blocks are ordered by their smallest vertex.
ComponentDecomposition connected_components(const WeightedGraph& g);

/// Entrywise mean of graphs over a shared identifier universe. Vertex order
/// follows the first graph; the others are aligned by identifier. Averages
/// are rounded to the nearest weight unit.
WeightedGraph integrate(std::span<const WeightedGraph> graphs);

struct Subgraph {
  WeightedGraph graph;
  std::vector<VertexId> to_parent;  // local vertex -> parent vertex
};

// Relative vertex order is preserved; `keep` may be in any order.
Subgraph induced_subgraph(const WeightedGraph& g, std::span<const VertexId> keep);

/// Counts taken after discarding isolated vertices.
struct GraphStats {
  std::size_t components = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  friend bool operator==(const GraphStats&, const GraphStats&) = default;
};

GraphStats graph_stats(const WeightedGraph& g);

}  // namespace tilo
