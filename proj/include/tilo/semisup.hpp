#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tilo/graph.hpp"

namespace tilo {

/// Partial binary labelling of a graph's vertices.
class LabelAssignment {
 public:
  LabelAssignment() = default;
  explicit LabelAssignment(std::size_t vertex_count) : labels_(vertex_count, kUnlabeled) {}

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t labeled_count() const { return labeled_; }
  std::size_t positive_count() const { return positives_; }
  bool empty() const { return labeled_ == 0; }

  bool is_labeled(VertexId v) const { return labels_[v] != kUnlabeled; }
  std::optional<int> label(VertexId v) const {
    return is_labeled(v) ? std::optional<int>(labels_[v]) : std::nullopt;
  }

  void set(VertexId v, int label);
  void clear(VertexId v);

  std::vector<VertexId> labeled_vertices() const;
  std::vector<VertexId> unlabeled_vertices() const;

  // Most common label; ties resolve to 0.
  int majority_label() const { return 2 * positives_ > labeled_ ? 1 : 0; }

  LabelAssignment flipped() const;

 private:
  static constexpr std::int8_t kUnlabeled = -1;
  std::vector<std::int8_t> labels_;
  std::size_t labeled_ = 0;
  std::size_t positives_ = 0;
};

struct Prediction {
  VertexId vertex;
  double probability;
  std::size_t runs;  // contributing runs; 0 means the majority fallback
};

// One entry per unlabeled vertex, ascending by vertex.
using PredictionVector = std::vector<Prediction>;

struct BagConfig {
  std::size_t runs = 25;
  double sample_fraction = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Clusters every connected component with at least two vertices and gives
/// each unlabeled vertex the mean label of the labeled vertices in its
/// cluster. Clusters without labels, singleton components and isolated
/// vertices get the majority label. Component c (counting only components
/// with two or more vertices) is ordered with seed derive_seed(seed, c).
PredictionVector propagate(const WeightedGraph& g, const LabelAssignment& labels, std::uint64_t seed);

/// Bagged propagation. Run r in 1..N uses seed derive_seed(cfg.seed, r),
/// samples floor(lambda * u) of the u unlabeled non-isolated vertices
/// without replacement, and propagates on the subgraph induced by the
/// sample plus every labeled vertex. Each vertex averages the runs that
/// sampled it. Runs execute in parallel; the result does not depend on
/// the thread count.
PredictionVector bagged_predict(const WeightedGraph& g, const LabelAssignment& labels, const BagConfig& cfg);

// Per-vertex mean over the runs that produced an estimate; vertices no run
// covered get the majority label with runs = 0. Runs are summed in order.
PredictionVector combine_runs(std::span<const PredictionVector> runs, const LabelAssignment& labels);

}  // namespace tilo
