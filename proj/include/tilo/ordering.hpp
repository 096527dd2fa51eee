#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tilo/graph.hpp"

namespace tilo {

// A permutation of a connected graph's vertices.
using Ordering = std::vector<VertexId>;

// profile[i - 1] is the boundary of the first i vertices, i = 1..n-1.
using BoundaryProfile = std::vector<Weight>;

// Boundary profile sorted nonincreasing.
using Width = std::vector<Weight>;

enum class Comparison { kLess, kEqual, kGreater };

BoundaryProfile boundary_profile(const WeightedGraph& g, std::span<const VertexId> order);

Width width_of(std::span<const Weight> profile);

// Lexicographic on nonincreasing tuples; lengths must match.
Comparison compare_widths(std::span<const Weight> a, std::span<const Weight> b);

/// First single-vertex relocation that strictly lowers the width, scanning
/// vertices by current position and then target positions, both ascending.
///
/// Moving one vertex only changes the prefixes between its old and new
/// position, and width comparison reduces to comparing the multisets of the
/// changed entries. The scan keeps both multisets incrementally, so a full
/// pass costs O(n^2 log n) instead of O(n^3 log n).
std::optional<Ordering> improving_move(const WeightedGraph& g, std::span<const VertexId> order);

// Serial reference: rebuilds and re-sorts the profile for every candidate.
std::optional<Ordering> improving_move_reference(const WeightedGraph& g,
                                                 std::span<const VertexId> order);

/// Relocation giving the smallest width over the same candidates; ties go to
/// the candidate improving_move would reach first. Cheaper overall than
/// repeated first improvement, which tends to take many tiny lexicographic
/// steps before settling.
std::optional<Ordering> steepest_move(const WeightedGraph& g, std::span<const VertexId> order);

std::optional<Ordering> steepest_move_reference(const WeightedGraph& g, std::span<const VertexId> order);

enum class MoveRule { kFirst, kSteepest };

struct FixpointResult {
  Ordering order;
  std::size_t moves = 0;
  std::vector<Width> trace;  // widths after start and each move, if requested
};

/// Random start from `seed`, then moves under `rule` until no single-vertex
/// relocation lowers the width. Requires a connected graph with at least two
/// vertices.
FixpointResult tilo_fixpoint_traced(const WeightedGraph& g, std::uint64_t seed, bool record_trace,
                                    MoveRule rule = MoveRule::kSteepest);

inline Ordering tilo_fixpoint(const WeightedGraph& g, std::uint64_t seed, MoveRule rule = MoveRule::kSteepest) {
  return tilo_fixpoint_traced(g, seed, false, rule).order;
}

// Uniformly random permutation of 0..n-1.
Ordering random_ordering(std::size_t n, std::uint64_t seed);

/// Local minima of a profile, reported as prefix sizes (1-based indices).
/// Plateaus of equal values are collapsed; a collapsed entry is a minimum
/// when both collapsed neighbours are strictly larger, reported at its
/// leftmost index. Ends are never minima.
std::vector<std::size_t> local_minima(std::span<const Weight> profile);

struct Partition {
  std::vector<std::size_t> cuts;  // prefix sizes
  std::vector<std::vector<VertexId>> blocks;
};

// Cuts `order` at every local minimum of its profile.
Partition extract_clusters(const WeightedGraph& g, std::span<const VertexId> order);

}  // namespace tilo
