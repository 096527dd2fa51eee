#pragma once

// Small graphs and exhaustive oracles shared by the test binaries. Nothing
// here calls the incremental search code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "tilo/graph.hpp"
#include "tilo/ordering.hpp"
#include "tilo/random.hpp"

namespace fixtures {

using tilo::Edge;
using tilo::VertexId;
using tilo::Weight;
using tilo::WeightedGraph;

inline constexpr Weight kUnit = tilo::kWeightScale;

inline WeightedGraph make(std::size_t n, std::initializer_list<std::pair<VertexId, VertexId>> pairs,
                          Weight w = kUnit) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, w});
  return WeightedGraph::with_vertex_count(n, std::move(edges));
}

inline WeightedGraph path(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, kUnit});
  return WeightedGraph::with_vertex_count(n, std::move(edges));
}

inline WeightedGraph triangle() { return make(3, {{0, 1}, {1, 2}, {0, 2}}); }

// Two cliques of size k on 0..k-1 and k..2k-1, bridged by (k-1, k).
inline WeightedGraph barbell(std::size_t k) {
  std::vector<Edge> edges;
  for (std::size_t side = 0; side < 2; ++side) {
    for (VertexId u = 0; u < k; ++u) {
      for (VertexId v = u + 1; v < k; ++v) {
        edges.push_back({static_cast<VertexId>(side * k + u), static_cast<VertexId>(side * k + v), kUnit});
      }
    }
  }
  edges.push_back({static_cast<VertexId>(k - 1), static_cast<VertexId>(k), kUnit});
  return WeightedGraph::with_vertex_count(2 * k, std::move(edges));
}

// Connected random graph: a random spanning tree plus extra edges with
// probability `p`, integer weights in [wmin, wmax].
inline WeightedGraph random_connected(std::size_t n, double p, int wmin, int wmax, std::uint64_t seed) {
  tilo::Rng rng(seed);
  std::set<std::pair<VertexId, VertexId>> pairs;
  std::vector<VertexId> perm(n);
  for (VertexId v = 0; v < n; ++v) perm[v] = v;
  rng.shuffle(perm);
  for (std::size_t i = 1; i < n; ++i) {
    VertexId a = perm[i], b = perm[rng.below(i)];
    pairs.insert({std::min(a, b), std::max(a, b)});
  }
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (rng.unit() < p) pairs.insert({u, v});
    }
  }
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) {
    const auto w = wmin + static_cast<int>(rng.below(static_cast<std::uint64_t>(wmax - wmin + 1)));
    edges.push_back({u, v, w * kUnit});
  }
  return WeightedGraph::with_vertex_count(n, std::move(edges));
}

// Prefix boundaries straight from the definition, one set at a time.
inline std::vector<Weight> direct_profile(const WeightedGraph& g, const std::vector<VertexId>& order) {
  std::vector<Weight> out;
  for (std::size_t i = 1; i < order.size(); ++i) {
    std::vector<VertexId> prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(tilo::boundary_size(g, prefix));
  }
  return out;
}

inline std::vector<Weight> sorted_desc(std::vector<Weight> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

struct BruteForce {
  std::vector<Weight> min_width;
  std::vector<std::vector<VertexId>> minimizers;
};

// Enumerates all n! orderings.
inline BruteForce brute_force_min_width(const WeightedGraph& g) {
  std::vector<VertexId> order(g.vertex_count());
  for (VertexId v = 0; v < order.size(); ++v) order[v] = v;
  BruteForce best;
  do {
    auto w = sorted_desc(direct_profile(g, order));
    if (best.minimizers.empty() || w < best.min_width) {
      best.min_width = w;
      best.minimizers.clear();
    }
    if (w == best.min_width) best.minimizers.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

inline std::vector<Weight> units(std::initializer_list<int> values) {
  std::vector<Weight> out;
  for (int v : values) out.push_back(v * kUnit);
  return out;
}

}  // namespace fixtures
