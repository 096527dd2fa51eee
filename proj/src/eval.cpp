#include "tilo/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>

#include <json.hpp>
#include <omp.h>

#include "tilo/error.hpp"
#include "tilo/random.hpp"

namespace tilo {

std::optional<double> roc_auc(std::span<const double> scores, std::span<const std::uint8_t> truth) {
  if (scores.size() != truth.size()) throw DomainError("scores and truth differ in length");
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Walk groups of equal score upwards; positives in a group beat every
  // negative below it and tie with negatives inside it.
  std::uint64_t wins = 0, ties = 0, positives = 0, negatives = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    std::uint64_t pos = 0, neg = 0;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
      (truth[idx[j]] ? pos : neg) += 1;
      ++j;
    }
    wins += pos * negatives;
    ties += pos * neg;
    positives += pos;
    negatives += neg;
    i = j;
  }
  if (positives == 0 || negatives == 0) return std::nullopt;
  return static_cast<double>(2 * wins + ties) / (2.0 * static_cast<double>(positives * negatives));
}

std::vector<VertexId> FoldPlan::members(std::size_t repeat, std::size_t fold) const {
  std::vector<VertexId> out;
  const auto& assignment = fold_of.at(repeat);
  for (VertexId v = 0; v < assignment.size(); ++v) {
    if (assignment[v] == fold) out.push_back(v);
  }
  return out;
}

FoldPlan make_folds(const LabelAssignment& labels, std::size_t k, std::size_t repeats, std::uint64_t seed) {
  if (k < 2) throw DomainError("fold count must be at least 2");
  if (repeats < 1) throw DomainError("repeat count must be at least 1");
  FoldPlan plan;
  plan.k = k;
  plan.repeats = repeats;
  plan.seed = seed;

  std::vector<VertexId> by_class[2];
  for (VertexId v : labels.labeled_vertices()) by_class[*labels.label(v)].push_back(v);
  plan.stratified = by_class[0].size() >= k && by_class[1].size() >= k;
  if (!plan.stratified) {
    plan.warning = "a class has fewer than " + std::to_string(k) + " members; folds are not stratified";
  }

  for (std::size_t r = 0; r < repeats; ++r) {
    Rng rng(derive_seed(seed, r));
    std::vector<VertexId> deal;
    if (plan.stratified) {
      for (auto& cls : by_class) {
        std::vector<VertexId> shuffled = cls;
        rng.shuffle(shuffled);
        deal.insert(deal.end(), shuffled.begin(), shuffled.end());
      }
    } else {
      deal = labels.labeled_vertices();
      rng.shuffle(deal);
    }
    auto& assignment = plan.fold_of.emplace_back(labels.vertex_count(), FoldPlan::kNoFold);
    for (std::size_t i = 0; i < deal.size(); ++i) assignment[deal[i]] = i % k;
  }
  return plan;
}

namespace {

double sample_stddev(std::span<const double> values, double mean) {
  if (values.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double mean_of(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

RocResult cross_validate(const WeightedGraph& g, const LabelAssignment& labels, const FoldPlan& plan,
                         const BagConfig& cfg, const CvOptions& options) {
  if (labels.vertex_count() != g.vertex_count()) throw DomainError("labels do not match the graph");
  cfg.validate();
  const std::size_t total = plan.k * plan.repeats;
  RocResult result;
  result.folds.resize(total);

  std::exception_ptr failure;
  const auto task_count = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel())
  for (std::int64_t t = 0; t < task_count; ++t) {
    try {
      const std::size_t repeat = static_cast<std::size_t>(t) / plan.k;
      const std::size_t fold = static_cast<std::size_t>(t) % plan.k;
      FoldScore& slot = result.folds[static_cast<std::size_t>(t)];
      slot = {repeat, fold, std::nullopt};

      std::vector<VertexId> test;
      for (VertexId v : plan.members(repeat, fold)) {
        if (options.score_isolated || !g.is_isolated(v)) test.push_back(v);
      }
      LabelAssignment training = labels;
      for (VertexId v : plan.members(repeat, fold)) training.clear(v);
      if (test.empty() || training.empty()) continue;

      std::vector<std::uint8_t> truth;
      for (VertexId v : test) truth.push_back(static_cast<std::uint8_t>(*labels.label(v)));
      if (std::all_of(truth.begin(), truth.end(), [&](auto y) { return y == truth.front(); })) continue;

      BagConfig fold_cfg = cfg;
      fold_cfg.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
      const PredictionVector predicted = bagged_predict(g, training, fold_cfg);
      std::vector<double> probability(g.vertex_count(), 0.0);
      for (const Prediction& p : predicted) probability[p.vertex] = p.probability;
      std::vector<double> scores;
      for (VertexId v : test) scores.push_back(probability[v]);
      slot.auc = roc_auc(scores, truth);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> scored;
  std::vector<std::vector<double>> per_repeat(plan.repeats);
  for (const FoldScore& f : result.folds) {
    if (f.auc) {
      scored.push_back(*f.auc);
      per_repeat[f.repeat].push_back(*f.auc);
    } else {
      ++result.skipped;
    }
  }
  if (scored.empty()) throw DomainError("every fold was degenerate; nothing to score");
  result.scored = scored.size();
  result.mean = mean_of(scored);
  result.stddev = sample_stddev(scored, result.mean);
  for (const auto& r : per_repeat) {
    if (!r.empty()) result.repeat_means.push_back(mean_of(r));
  }
  result.repeat_stddev = sample_stddev(result.repeat_means, mean_of(result.repeat_means));
  return result;
}

ExperimentReport run_experiment(std::span<const NamedGraph> graphs, std::span<const NamedLabels> classes,
                                const FoldParams& folds, const BagConfig& cfg, const CvOptions& options,
                                void (*progress)(const std::string&, std::size_t, std::size_t)) {
  ExperimentReport report;
  for (const auto& g : graphs) report.graph_names.push_back(g.name);
  for (const auto& c : classes) {
    for (const auto& g : graphs) {
      if (c.labels.vertex_count() != g.graph.vertex_count()) {
        throw DomainError("class '" + c.name + "' does not share the vertex universe of graph '" + g.name + "'");
      }
    }
  }
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const NamedLabels& cls = classes[ci];
    report.class_names.push_back(cls.name);
    const FoldPlan plan = make_folds(cls.labels, folds.k, folds.repeats, folds.seed);
    auto& row = report.cells.emplace_back();
    for (const auto& g : graphs) row.push_back(cross_validate(g.graph, cls.labels, plan, cfg, options));
    if (progress) progress(cls.name, ci + 1, classes.size());
  }
  return report;
}

namespace {

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

}  // namespace

std::string report_tsv(const ExperimentReport& report) {
  std::string out = "class";
  for (const auto& name : report.graph_names) out += "\t" + name;
  out += "\n";
  for (std::size_t c = 0; c < report.class_names.size(); ++c) {
    out += report.class_names[c];
    for (const RocResult& cell : report.cells[c]) out += "\t" + fixed3(cell.mean) + "±" + fixed3(cell.stddev);
    out += "\n";
  }
  return out;
}

std::string report_json(const ExperimentReport& report) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < report.class_names.size(); ++c) {
    for (std::size_t g = 0; g < report.graph_names.size(); ++g) {
      const RocResult& cell = report.cells[c][g];
      nlohmann::ordered_json folds = nlohmann::ordered_json::array();
      for (const FoldScore& f : cell.folds) {
        folds.push_back({{"repeat", f.repeat},
                         {"fold", f.fold},
                         {"auc", f.auc ? nlohmann::ordered_json(*f.auc) : nlohmann::ordered_json(nullptr)}});
      }
      cells.push_back({{"class", report.class_names[c]},
                       {"graph", report.graph_names[g]},
                       {"mean", cell.mean},
                       {"std", cell.stddev},
                       {"repeat_means", cell.repeat_means},
                       {"repeat_std", cell.repeat_stddev},
                       {"scored", cell.scored},
                       {"skipped", cell.skipped},
                       {"folds", folds}});
    }
  }
  nlohmann::ordered_json doc = {
      {"graphs", report.graph_names}, {"classes", report.class_names}, {"cells", cells}};
  return doc.dump(2) + "\n";
}

}  // namespace tilo
