#include "tilo/pinch.hpp"

#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

#include "tilo/error.hpp"

namespace tilo {

bool is_pinch_cluster_oracle(const WeightedGraph& g, const VertexSet& s) {
  const std::size_t n = g.vertex_count();
  if (n > kPinchOracleMaxVertices) throw CapacityError("pinch oracle limited to 20 vertices");
  if (s.universe() != n) throw DomainError("vertex set does not belong to this graph");
  if (s.empty() || s.size() == n) throw DomainError("pinch oracle needs a nonempty proper subset");

  const Weight limit = boundary_size(g, s);
  if (limit == 0) return true;

  std::uint32_t start = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (s.contains(v)) start |= 1u << v;
  }

  std::vector<char> seen(std::size_t{1} << n, 0);
  std::deque<std::pair<std::uint32_t, Weight>> queue;
  seen[start] = 1;
  queue.emplace_back(start, limit);
  while (!queue.empty()) {
    const auto [mask, boundary] = queue.front();
    queue.pop_front();
    for (VertexId v = 0; v < n; ++v) {
      Weight inside = 0;
      for (const Neighbor& nb : g.neighbors(v)) {
        if (mask & (1u << nb.vertex)) inside += nb.w;
      }
      const bool member = mask & (1u << v);
      // Toggling v swaps its edges into the set with its edges out of it.
      const Weight outside = g.weighted_degree(v) - inside;
      const Weight next_boundary = member ? boundary - outside + inside : boundary + outside - inside;
      if (next_boundary < limit) return false;
      if (next_boundary > limit) continue;
      const std::uint32_t next = mask ^ (1u << v);
      if (!seen[next]) {
        seen[next] = 1;
        queue.emplace_back(next, next_boundary);
      }
    }
  }
  return true;
}

}  // namespace tilo
