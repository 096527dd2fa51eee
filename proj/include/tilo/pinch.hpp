#pragma once

#include <cstddef>

#include "tilo/graph.hpp"

namespace tilo {

inline constexpr std::size_t kPinchOracleMaxVertices = 20;

/// Exhaustive pinch-cluster check by breadth-first search over vertex sets.
///
/// Starting from `s`, single-vertex additions and removals are explored
/// while the boundary stays at most boundary_size(s). Returns false as soon
/// as a reachable set has a strictly smaller boundary than `s`.
///
/// `s` must be a nonempty proper subset; graphs above
/// kPinchOracleMaxVertices throw CapacityError.
bool is_pinch_cluster_oracle(const WeightedGraph& g, const VertexSet& s);

}  // namespace tilo
