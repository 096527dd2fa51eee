#include "tilo/semisup.hpp"

#include <cmath>
#include <exception>

#include <omp.h>

#include "tilo/error.hpp"
#include "tilo/ordering.hpp"
#include "tilo/random.hpp"

namespace tilo {

void LabelAssignment::set(VertexId v, int label) {
  if (v >= labels_.size()) throw DomainError("labeled vertex outside the graph");
  if (label != 0 && label != 1) throw DomainError("labels must be 0 or 1");
  clear(v);
  labels_[v] = static_cast<std::int8_t>(label);
  ++labeled_;
  if (label == 1) ++positives_;
}

void LabelAssignment::clear(VertexId v) {
  if (labels_[v] == kUnlabeled) return;
  --labeled_;
  if (labels_[v] == 1) --positives_;
  labels_[v] = kUnlabeled;
}

std::vector<VertexId> LabelAssignment::labeled_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < labels_.size(); ++v) {
    if (is_labeled(v)) out.push_back(v);
  }
  return out;
}

std::vector<VertexId> LabelAssignment::unlabeled_vertices() const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < labels_.size(); ++v) {
    if (!is_labeled(v)) out.push_back(v);
  }
  return out;
}

LabelAssignment LabelAssignment::flipped() const {
  LabelAssignment out(labels_.size());
  for (VertexId v = 0; v < labels_.size(); ++v) {
    if (is_labeled(v)) out.set(v, 1 - labels_[v]);
  }
  return out;
}

void BagConfig::validate() const {
  if (runs < 1) throw DomainError("bag count must be at least 1");
  if (!(sample_fraction > 0.0 && sample_fraction <= 1.0)) throw DomainError("sample fraction must lie in (0, 1]");
}

namespace {

void check_labels(const WeightedGraph& g, const LabelAssignment& labels) {
  if (labels.vertex_count() != g.vertex_count()) throw DomainError("labels do not match the graph");
  if (labels.empty()) throw DomainError("at least one labeled vertex is required");
}

}  // namespace

PredictionVector propagate(const WeightedGraph& g, const LabelAssignment& labels, std::uint64_t seed) {
  check_labels(g, labels);
  const double fallback = labels.majority_label();
  std::vector<double> probability(g.vertex_count(), fallback);

  std::uint64_t component_index = 0;
  for (const auto& block : connected_components(g).blocks) {
    if (block.size() < 2) continue;
    const Subgraph sub = induced_subgraph(g, block);
    const Ordering order = tilo_fixpoint(sub.graph, derive_seed(seed, component_index++));
    for (const auto& cluster : extract_clusters(sub.graph, order).blocks) {
      std::size_t labeled = 0, positives = 0;
      for (VertexId local : cluster) {
        if (auto y = labels.label(sub.to_parent[local])) {
          ++labeled;
          positives += static_cast<std::size_t>(*y);
        }
      }
      if (labeled == 0) continue;
      const double mean = static_cast<double>(positives) / static_cast<double>(labeled);
      for (VertexId local : cluster) probability[sub.to_parent[local]] = mean;
    }
  }

  PredictionVector out;
  for (VertexId v : labels.unlabeled_vertices()) out.push_back({v, probability[v], 1});
  return out;
}

PredictionVector bagged_predict(const WeightedGraph& g, const LabelAssignment& labels, const BagConfig& cfg) {
  check_labels(g, labels);
  cfg.validate();

  std::vector<VertexId> pool;
  for (VertexId v : labels.unlabeled_vertices()) {
    if (!g.is_isolated(v)) pool.push_back(v);
  }
  const std::vector<VertexId> labeled = labels.labeled_vertices();
  const auto sample_size = static_cast<std::size_t>(
      std::floor(cfg.sample_fraction * static_cast<double>(pool.size())));

  std::vector<PredictionVector> per_run(cfg.runs);
  std::exception_ptr failure;
  const auto run_count = static_cast<std::int64_t>(cfg.runs);
#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel())
  for (std::int64_t r = 0; r < run_count; ++r) {
    try {
      const std::uint64_t run_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r) + 1);
      Rng rng(run_seed);
      std::vector<VertexId> bag = pool;
      for (std::size_t i = 0; i < sample_size; ++i) {
        std::swap(bag[i], bag[i + rng.below(bag.size() - i)]);
      }
      bag.resize(sample_size);
      bag.insert(bag.end(), labeled.begin(), labeled.end());

      const Subgraph sub = induced_subgraph(g, bag);
      LabelAssignment sub_labels(sub.to_parent.size());
      for (VertexId local = 0; local < sub.to_parent.size(); ++local) {
        if (auto y = labels.label(sub.to_parent[local])) sub_labels.set(local, *y);
      }
      PredictionVector run = propagate(sub.graph, sub_labels, run_seed);
      for (Prediction& p : run) p.vertex = sub.to_parent[p.vertex];
      per_run[static_cast<std::size_t>(r)] = std::move(run);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  return combine_runs(per_run, labels);
}

PredictionVector combine_runs(std::span<const PredictionVector> runs, const LabelAssignment& labels) {
  const std::size_t n = labels.vertex_count();
  std::vector<double> sum(n, 0.0);
  std::vector<std::size_t> count(n, 0);
  for (const PredictionVector& run : runs) {
    for (const Prediction& p : run) {
      if (p.vertex >= n) throw DomainError("prediction for a vertex outside the graph");
      sum[p.vertex] += p.probability;
      ++count[p.vertex];
    }
  }
  const double fallback = labels.majority_label();
  PredictionVector out;
  for (VertexId v : labels.unlabeled_vertices()) {
    out.push_back(count[v] ? Prediction{v, sum[v] / static_cast<double>(count[v]), count[v]}
                           : Prediction{v, fallback, 0});
  }
  return out;
}

}  // namespace tilo
