#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tilo/graph.hpp"
#include "tilo/semisup.hpp"

namespace tilo {

/// Area under the ROC curve in Mann-Whitney form: the fraction of
/// (positive, negative) pairs ranked correctly, ties counting one half.
/// Returns nullopt when `truth` lacks either class.
std::optional<double> roc_auc(std::span<const double> scores, std::span<const std::uint8_t> truth);

/// Repeated k-fold assignment of the labeled vertices.
struct FoldPlan {
  static constexpr std::size_t kNoFold = static_cast<std::size_t>(-1);

  std::size_t k = 5;
  std::size_t repeats = 3;
  std::uint64_t seed = 0;
  bool stratified = true;
  std::string warning;  // set when stratification had to be dropped
  std::vector<std::vector<std::size_t>> fold_of;  // [repeat][vertex], kNoFold if unlabeled

  std::vector<VertexId> members(std::size_t repeat, std::size_t fold) const;
};

/// Shuffles each class with a per-repeat seed and deals the concatenated
/// classes round-robin, so fold sizes and per-class counts differ by at
/// most one. Falls back to an unstratified shuffle when a class has fewer
/// than k members.
FoldPlan make_folds(const LabelAssignment& labels, std::size_t k, std::size_t repeats, std::uint64_t seed);

struct FoldScore {
  std::size_t repeat;
  std::size_t fold;
  std::optional<double> auc;  // nullopt: single-class test fold, skipped
};

struct RocResult {
  std::vector<FoldScore> folds;
  std::size_t scored = 0;
  std::size_t skipped = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample std over scored folds
  std::vector<double> repeat_means;
  double repeat_stddev = 0.0;  // sample std over repeat means
};

struct CvOptions {
  // Score test vertices that are isolated in the graph (at the majority
  // probability) instead of excluding them.
  bool score_isolated = false;
};

/// For every fold: hide its labels, run bagged_predict with the rest, and
/// score the hidden vertices. Fold f of repeat r uses bag seed
/// derive_seed(cfg.seed, r * k + f). Folds run in parallel.
RocResult cross_validate(const WeightedGraph& g, const LabelAssignment& labels, const FoldPlan& plan,
                         const BagConfig& cfg, const CvOptions& options = {});

struct NamedGraph {
  std::string name;
  WeightedGraph graph;
};

struct NamedLabels {
  std::string name;
  LabelAssignment labels;
};

struct FoldParams {
  std::size_t k = 5;
  std::size_t repeats = 3;
  std::uint64_t seed = 0;
};

struct ExperimentReport {
  std::vector<std::string> graph_names;
  std::vector<std::string> class_names;
  std::vector<std::vector<RocResult>> cells;  // [class][graph]
};

/// Every (class, graph) cell is an independent cross_validate call with the
/// same fold and bag parameters. `progress`, if set, is called after each
/// class.
ExperimentReport run_experiment(std::span<const NamedGraph> graphs, std::span<const NamedLabels> classes,
                                const FoldParams& folds, const BagConfig& cfg, const CvOptions& options = {},
                                void (*progress)(const std::string& class_name, std::size_t done,
                                                 std::size_t total) = nullptr);

// Rows are classes, columns graphs, cells "mean±std" with three decimals.
std::string report_tsv(const ExperimentReport& report);

// Same grid with raw fold scores and both std variants.
std::string report_json(const ExperimentReport& report);

}  // namespace tilo
