#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tilo/graph.hpp"
#include "tilo/semisup.hpp"

namespace tilo {

/// Planted-partition (stochastic block model) parameters.
struct SynthSpec {
  std::vector<std::size_t> block_sizes{50, 50};
  double p_in = 0.3;
  double p_out = 0.0;
  Weight weight_min = kWeightScale;  // integer weights drawn in [min, max] units
  Weight weight_max = kWeightScale;
  double label_fraction = 0.5;
  std::size_t positive_block = 0;  // truth label is membership in this block
  std::uint64_t seed = 0;

  // p_out <= p_in; p_out == p_in is the structure-free null model.
  void validate() const;
};

struct SynthData {
  WeightedGraph graph;
  LabelAssignment labels;  // the sampled labeled fraction
  LabelAssignment truth;   // every vertex
  std::vector<std::size_t> block_of;
};

// Vertex ids are zero-padded ("v007") so lexicographic and index order agree.
SynthData synth_planted(const SynthSpec& spec);

}  // namespace tilo
