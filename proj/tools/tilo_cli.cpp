// Command-line front end: cluster, predict, cv, synth, validate.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "tilo/error.hpp"
#include "tilo/eval.hpp"
#include "tilo/io.hpp"
#include "tilo/ordering.hpp"
#include "tilo/random.hpp"
#include "tilo/semisup.hpp"
#include "tilo/synth.hpp"

namespace {

constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "tsv";
  int threads = 0;

  std::uint64_t resolve_seed() {
    if (!seed) {
      seed = (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
      std::cerr << "seed: " << *seed << "\n";
    }
    return *seed;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_format = true) {
  cmd->add_option("--seed", c.seed, "Master seed (drawn and printed when omitted)");
  cmd->add_option("--out", c.out, "Output path (stdout when omitted)");
  if (with_format) cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"tsv", "json"}));
  cmd->add_option("--threads", c.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tilo::InputError("cannot write '" + path + "'");
  out << text;
}

std::string probability_text(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", p);
  return buf;
}

int cmd_cluster(const std::string& graph_path, Common& c) {
  const tilo::WeightedGraph g = tilo::read_edge_list(graph_path);
  const std::uint64_t seed = c.resolve_seed();
  std::vector<std::pair<std::string, std::size_t>> rows;
  std::size_t cluster_id = 0;
  std::uint64_t component_index = 0;
  for (const auto& block : tilo::connected_components(g).blocks) {
    if (block.size() < 2) continue;
    const tilo::Subgraph sub = tilo::induced_subgraph(g, block);
    const auto order = tilo::tilo_fixpoint(sub.graph, tilo::derive_seed(seed, component_index++));
    for (const auto& cluster : tilo::extract_clusters(sub.graph, order).blocks) {
      for (tilo::VertexId local : cluster) rows.emplace_back(g.id(sub.to_parent[local]), cluster_id);
      ++cluster_id;
    }
  }
  std::sort(rows.begin(), rows.end());
  std::ostringstream text;
  if (c.format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& [id, cl] : rows) doc[id] = cl;
    text << doc.dump(2) << "\n";
  } else {
    for (const auto& [id, cl] : rows) text << id << '\t' << cl << '\n';
  }
  emit(c.out, text.str());
  return 0;
}

int cmd_predict(const std::string& graph_path, const std::string& labels_path, tilo::BagConfig cfg, Common& c) {
  const tilo::WeightedGraph g = tilo::read_edge_list(graph_path);
  const tilo::LabelAssignment labels = tilo::read_labels(labels_path, g);
  cfg.seed = c.resolve_seed();
  const tilo::PredictionVector predictions = tilo::bagged_predict(g, labels, cfg);
  std::ostringstream text;
  if (c.format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& p : predictions) {
      if (!g.is_isolated(p.vertex)) doc[g.id(p.vertex)] = {{"probability", p.probability}, {"runs", p.runs}};
    }
    text << doc.dump(2) << "\n";
  } else {
    for (const auto& p : predictions) {
      if (!g.is_isolated(p.vertex)) text << g.id(p.vertex) << '\t' << probability_text(p.probability) << '\n';
    }
  }
  emit(c.out, text.str());
  return 0;
}

int cmd_cv(const std::string& manifest_path, tilo::BagConfig cfg, tilo::FoldParams folds, bool score_isolated,
           Common& c) {
  const tilo::Dataset ds = tilo::load_dataset(tilo::read_manifest(manifest_path));
  const std::uint64_t seed = c.resolve_seed();
  cfg.seed = tilo::derive_seed(seed, 0);
  folds.seed = tilo::derive_seed(seed, 1);

  std::vector<tilo::NamedGraph> graphs;
  for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
    if (ds.evaluate[i]) graphs.push_back(ds.graphs[i]);
  }
  for (const auto& cls : ds.classes) {
    const auto plan = tilo::make_folds(cls.labels, folds.k, 1, folds.seed);
    if (!plan.warning.empty()) std::cerr << "warning: class " << cls.name << ": " << plan.warning << "\n";
  }
  tilo::CvOptions options;
  options.score_isolated = score_isolated;
  const auto report = tilo::run_experiment(graphs, ds.classes, folds, cfg, options,
                                           [](const std::string& name, std::size_t done, std::size_t total) {
                                             std::cerr << "class " << name << " done (" << done << "/" << total
                                                       << ")\n";
                                           });
  if (c.out.empty()) {
    std::cout << (c.format == "json" ? tilo::report_json(report) : tilo::report_tsv(report));
  } else {
    emit(c.out + ".tsv", tilo::report_tsv(report));
    emit(c.out + ".json", tilo::report_json(report));
  }
  return 0;
}

int cmd_synth(tilo::SynthSpec spec, double weight_min, double weight_max, Common& c) {
  if (c.out.empty()) throw tilo::DomainError("synth needs --out PREFIX");
  spec.seed = c.resolve_seed();
  spec.weight_min = tilo::weight_from_real(weight_min);
  spec.weight_max = tilo::weight_from_real(weight_max);
  try {
    spec.validate();
  } catch (const tilo::DomainError& e) {
    throw tilo::InputError(e.what());
  }
  const tilo::SynthData data = tilo::synth_planted(spec);
  const std::filesystem::path prefix(c.out);
  const std::string stem = prefix.filename().string();

  std::ostringstream edges, labels, truth, classes;
  tilo::write_edge_list(edges, data.graph);
  tilo::write_labels(labels, data.graph, data.labels);
  tilo::write_labels(truth, data.graph, data.truth);

  tilo::LabelMatrix matrix;
  matrix.vertex_ids = data.graph.vertex_ids();
  matrix.class_names = {"block" + std::to_string(spec.positive_block)};
  for (tilo::VertexId v = 0; v < data.graph.vertex_count(); ++v) {
    const auto y = data.labels.label(v);
    matrix.entries.push_back({y ? static_cast<std::int8_t>(*y) : std::int8_t{-1}});
  }
  tilo::write_label_matrix(classes, matrix);

  tilo::DatasetManifest manifest;
  manifest.matrices.push_back({"synth", stem + ".edges.tsv", tilo::MatrixFormat::kEdgeList, 0, true});
  manifest.labels = stem + ".classes.tsv";

  emit(c.out + ".edges.tsv", edges.str());
  emit(c.out + ".labels.tsv", labels.str());
  emit(c.out + ".truth.tsv", truth.str());
  emit(c.out + ".classes.tsv", classes.str());
  emit(c.out + ".manifest.json", tilo::manifest_json(manifest));
  return 0;
}

int cmd_validate(const std::string& manifest_path, Common& c) {
  const tilo::Dataset ds = tilo::load_dataset(tilo::read_manifest(manifest_path));
  std::ostringstream text;
  text << "graph\tcomponents\tvertices\tedges\tstatus\n";
  for (const auto& ng : ds.graphs) {
    std::optional<tilo::GraphStats> expected;
    if (auto it = ds.expected_stats.find(ng.name); it != ds.expected_stats.end()) expected = it->second;
    const auto check = tilo::validate_stats(ng.name, ng.graph, expected);
    const char* status = check.status == tilo::StatsCheck::Status::kMatched      ? "matched"
                         : check.status == tilo::StatsCheck::Status::kMismatched ? "MISMATCH"
                                                                                 : "unchecked";
    text << ng.name << '\t' << check.actual.components << '\t' << check.actual.vertices << '\t'
         << check.actual.edges << '\t' << status;
    for (const auto& m : check.mismatches) text << "\t" << m;
    text << '\n';
  }
  emit(c.out, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordering-based pinch clustering and semisupervised label prediction"};
  app.require_subcommand(1);

  Common common;
  tilo::BagConfig cfg;
  tilo::FoldParams folds;
  std::string graph_path, labels_path, manifest_path;
  bool score_isolated = false;

  auto* cluster = app.add_subcommand("cluster", "Cut each component's fixed-point ordering at every local minimum");
  cluster->add_option("graph", graph_path, "Edge list (u<TAB>v<TAB>weight)")->required();
  add_common(cluster, common);

  auto add_bagging = [&](CLI::App* cmd) {
    cmd->add_option("--bags", cfg.runs, "Bagging runs N")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--lambda", cfg.sample_fraction, "Unlabeled sample fraction")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  };

  auto* predict = app.add_subcommand("predict", "Bagged label probabilities for unlabeled vertices");
  predict->add_option("graph", graph_path, "Edge list")->required();
  predict->add_option("labels", labels_path, "Labels (vertex_id<TAB>0|1)")->required();
  add_bagging(predict);
  add_common(predict, common);

  auto* cv = app.add_subcommand("cv", "Repeated k-fold cross-validation over a dataset manifest");
  cv->add_option("manifest", manifest_path, "Dataset manifest (JSON)")->required();
  add_bagging(cv);
  cv->add_option("--folds", folds.k, "Folds per repeat")->capture_default_str()->check(CLI::Range(2, 1 << 20));
  cv->add_option("--repeats", folds.repeats, "Repeats")->capture_default_str()->check(CLI::PositiveNumber);
  cv->add_flag("--score-isolated", score_isolated, "Score isolated test vertices at the majority probability");
  add_common(cv, common);

  tilo::SynthSpec spec;
  double weight_min = 1.0, weight_max = 1.0;
  auto* synth = app.add_subcommand("synth", "Planted-partition graph with labels and a manifest");
  synth->add_option("--blocks", spec.block_sizes, "Block sizes")->capture_default_str()->delimiter(',');
  synth->add_option("--p-in", spec.p_in, "Intra-block edge probability")->capture_default_str();
  synth->add_option("--p-out", spec.p_out, "Inter-block edge probability")->capture_default_str();
  synth->add_option("--weight-min", weight_min, "Smallest edge weight")->capture_default_str();
  synth->add_option("--weight-max", weight_max, "Largest edge weight")->capture_default_str();
  synth->add_option("--label-fraction", spec.label_fraction, "Fraction of vertices labeled")->capture_default_str();
  synth->add_option("--positive-block", spec.positive_block, "Block whose members are labeled 1")->capture_default_str();
  add_common(synth, common, false);

  auto* validate = app.add_subcommand("validate", "Report graph statistics against expected values");
  validate->add_option("manifest", manifest_path, "Dataset manifest (JSON)")->required();
  add_common(validate, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitDomain;
  }

  if (common.threads > 0) omp_set_num_threads(common.threads);
  try {
    if (*cluster) return cmd_cluster(graph_path, common);
    if (*predict) return cmd_predict(graph_path, labels_path, cfg, common);
    if (*cv) return cmd_cv(manifest_path, cfg, folds, score_isolated, common);
    if (*synth) return cmd_synth(spec, weight_min, weight_max, common);
    if (*validate) return cmd_validate(manifest_path, common);
  } catch (const tilo::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const tilo::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
