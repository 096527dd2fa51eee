#include "tilo/synth.hpp"

#include <cmath>
#include <string>

#include "tilo/error.hpp"
#include "tilo/random.hpp"

namespace tilo {

void SynthSpec::validate() const {
  if (block_sizes.empty()) throw DomainError("at least one block is required");
  for (std::size_t s : block_sizes) {
    if (s == 0) throw DomainError("blocks must be nonempty");
  }
  if (!(p_out >= 0.0 && p_in <= 1.0 && p_out <= p_in)) throw DomainError("need 0 <= p_out <= p_in <= 1");
  if (!(label_fraction > 0.0 && label_fraction <= 1.0)) throw DomainError("label fraction must lie in (0, 1]");
  if (weight_min <= 0 || weight_max < weight_min) throw DomainError("need 0 < weight_min <= weight_max");
  if (positive_block >= block_sizes.size()) throw DomainError("positive block out of range");
}

SynthData synth_planted(const SynthSpec& spec) {
  spec.validate();
  SynthData out;
  for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) out.block_of.insert(out.block_of.end(), spec.block_sizes[b], b);
  const std::size_t n = out.block_of.size();

  const std::size_t digits = std::to_string(n == 0 ? 0 : n - 1).size();
  std::vector<std::string> ids(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::string num = std::to_string(v);
    ids[v] = "v" + std::string(digits - num.size(), '0') + num;
  }

  Rng rng(derive_seed(spec.seed, 0));
  const auto span = static_cast<std::uint64_t>(spec.weight_max - spec.weight_min) + 1;
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      const double p = out.block_of[u] == out.block_of[v] ? spec.p_in : spec.p_out;
      if (rng.unit() < p) {
        const Weight w = span == 1 ? spec.weight_min : spec.weight_min + static_cast<Weight>(rng.below(span));
        edges.push_back({u, v, w});
      }
    }
  }
  out.graph = WeightedGraph(std::move(ids), std::move(edges));

  out.truth = LabelAssignment(n);
  for (VertexId v = 0; v < n; ++v) out.truth.set(v, out.block_of[v] == spec.positive_block ? 1 : 0);

  Rng label_rng(derive_seed(spec.seed, 1));
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  label_rng.shuffle(order);
  const auto labeled = static_cast<std::size_t>(std::floor(spec.label_fraction * static_cast<double>(n) + 0.5));
  out.labels = LabelAssignment(n);
  for (std::size_t i = 0; i < labeled && i < n; ++i) out.labels.set(order[i], *out.truth.label(order[i]));
  return out;
}

}  // namespace tilo
