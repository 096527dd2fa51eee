#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tilo/eval.hpp"
#include "tilo/graph.hpp"
#include "tilo/semisup.hpp"

namespace tilo {

// ---------------------------------------------------------------------------
// Graph files
// ---------------------------------------------------------------------------

/// TSV edge list, one `u<TAB>v<TAB>weight` per line; blank lines and lines
/// starting with '#' are skipped. Without a universe, vertices are the
/// identifiers seen, sorted lexicographically. With one, unknown identifiers
/// are rejected. Edges lighter than `threshold` are dropped.
WeightedGraph read_edge_list(std::istream& in, const std::vector<std::string>* universe = nullptr,
                             Weight threshold = 0);
WeightedGraph read_edge_list(const std::filesystem::path& path,
                             const std::vector<std::string>* universe = nullptr, Weight threshold = 0);

// Edges in (u, v) order. Isolated vertices are written as zero-weight lines
// so that reading the output back yields the same graph.
void write_edge_list(std::ostream& out, const WeightedGraph& g);

/// Matrix Market coordinate file (real, integer or pattern). `symmetric`
/// files are taken as given; `general` files are symmetrized as
/// (M + M^T) / 2. Diagonal entries are ignored. Vertex i is universe[i-1],
/// or "i" without a universe.
WeightedGraph read_matrix_market(std::istream& in, const std::vector<std::string>* universe = nullptr,
                                 Weight threshold = 0);
WeightedGraph read_matrix_market(const std::filesystem::path& path,
                                 const std::vector<std::string>* universe = nullptr, Weight threshold = 0);

/// Dense whitespace-separated n x n matrix, symmetrized as (M + M^T) / 2.
WeightedGraph read_dense_matrix(std::istream& in, const std::vector<std::string>* universe = nullptr,
                                Weight threshold = 0);
WeightedGraph read_dense_matrix(const std::filesystem::path& path,
                                const std::vector<std::string>* universe = nullptr, Weight threshold = 0);

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

// `vertex_id<TAB>{0|1}` lines; unknown or repeated vertices are rejected.
LabelAssignment read_labels(std::istream& in, const WeightedGraph& g);
LabelAssignment read_labels(const std::filesystem::path& path, const WeightedGraph& g);
void write_labels(std::ostream& out, const WeightedGraph& g, const LabelAssignment& labels);

/// Vertices x classes table. The header holds a first column name followed
/// by class names; each row is `vertex_id` then one entry per class, each
/// 0, 1 or NA (unlabeled).
struct LabelMatrix {
  std::vector<std::string> vertex_ids;
  std::vector<std::string> class_names;
  std::vector<std::vector<std::int8_t>> entries;  // [vertex][class], -1 for NA

  // Labels of one class over `g`, aligned by identifier.
  LabelAssignment column(std::size_t cls, const WeightedGraph& g) const;
};

LabelMatrix read_label_matrix(std::istream& in);
LabelMatrix read_label_matrix(const std::filesystem::path& path);
void write_label_matrix(std::ostream& out, const LabelMatrix& matrix);

// ---------------------------------------------------------------------------
// Datasets
// ---------------------------------------------------------------------------

enum class MatrixFormat { kEdgeList, kMatrixMarket, kDense };

struct MatrixEntry {
  std::string name;
  std::filesystem::path path;
  MatrixFormat format = MatrixFormat::kEdgeList;
  Weight threshold = 0;
  bool evaluate = true;  // include as a report column
};

/// JSON manifest:
///   {"matrices": [{"name", "path", "format": "tsv"|"mtx"|"dense",
///                  "threshold"?, "evaluate"?}],
///    "labels": path,
///    "integrate"?: [matrix names],  // adds a graph named "Integrated"
///    "expected_stats"?: {name: {"components", "vertices", "edges"}}}
/// Relative paths are resolved against the manifest's directory.
struct DatasetManifest {
  std::vector<MatrixEntry> matrices;
  std::filesystem::path labels;
  std::vector<std::string> integrate;
  std::map<std::string, GraphStats> expected_stats;
};

inline constexpr const char* kIntegratedGraphName = "Integrated";

DatasetManifest read_manifest(const std::filesystem::path& path);
std::string manifest_json(const DatasetManifest& manifest);

struct Dataset {
  std::vector<std::string> vertex_ids;  // label-matrix row order
  std::vector<NamedGraph> graphs;       // every matrix, then the integrated graph
  std::vector<NamedLabels> classes;
  std::vector<bool> evaluate;           // per graph
  std::map<std::string, GraphStats> expected_stats;
};

// The label matrix defines the vertex universe every matrix is aligned to.
Dataset load_dataset(const DatasetManifest& manifest);

struct StatsCheck {
  enum class Status { kMatched, kMismatched, kUnchecked };
  std::string graph;
  Status status = Status::kUnchecked;
  GraphStats actual;
  std::optional<GraphStats> expected;
  std::vector<std::string> mismatches;
};

StatsCheck validate_stats(const std::string& name, const WeightedGraph& g,
                          const std::optional<GraphStats>& expected);

}  // namespace tilo
