#include "tilo/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "tilo/error.hpp"

namespace tilo {
namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') fields.back().pop_back();
  return fields;
}

bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

WeightedGraph build(std::vector<std::string> ids, std::vector<Edge> edges, Weight threshold) {
  std::erase_if(edges, [threshold](const Edge& e) { return e.w < threshold; });
  try {
    return WeightedGraph(std::move(ids), std::move(edges));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

std::unordered_map<std::string, VertexId> index_of(const std::vector<std::string>& ids) {
  std::unordered_map<std::string, VertexId> index;
  for (VertexId v = 0; v < ids.size(); ++v) index.emplace(ids[v], v);
  return index;
}

// Collects (i, j) entries of a square matrix and symmetrizes them.
class SymmetricAccumulator {
 public:
  void add(VertexId i, VertexId j, Weight w, bool mirror_implied, std::size_t line_no) {
    if (w < 0) throw InputError(where(line_no) + "negative matrix entry");
    if (!seen_.emplace(i, j).second) throw InputError(where(line_no) + "duplicate matrix entry");
    if (i == j) return;
    if (mirror_implied && !seen_.emplace(j, i).second) throw InputError(where(line_no) + "duplicate matrix entry");
    sums_[{std::min(i, j), std::max(i, j)}] += mirror_implied ? 2 * w : w;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(sums_.size());
    for (const auto& [key, twice] : sums_) out.push_back({key.first, key.second, (twice + 1) / 2});
    return out;
  }

 private:
  std::set<std::pair<VertexId, VertexId>> seen_;
  std::map<std::pair<VertexId, VertexId>, Weight> sums_;  // M_ij + M_ji
};

std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i + 1);
  return ids;
}

int parse_binary(const std::string& field, std::size_t line_no) {
  if (field == "0") return 0;
  if (field == "1") return 1;
  throw InputError(where(line_no) + "label '" + field + "' is not 0 or 1");
}

}  // namespace

WeightedGraph read_edge_list(std::istream& in, const std::vector<std::string>* universe, Weight threshold) {
  struct Raw {
    std::string u, v;
    Weight w;
  };
  std::vector<Raw> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3) throw InputError(where(line_no) + "expected u<TAB>v<TAB>weight");
    if (fields[0].empty() || fields[1].empty()) throw InputError(where(line_no) + "empty vertex id");
    Weight w;
    try {
      w = parse_weight(fields[2]);
    } catch (const InputError& e) {
      throw InputError(where(line_no) + e.what());
    }
    if (w < 0) throw InputError(where(line_no) + "negative weight");
    if (fields[0] == fields[1]) throw InputError(where(line_no) + "self-loop on '" + fields[0] + "'");
    raw.push_back({std::move(fields[0]), std::move(fields[1]), w});
  }
  if (raw.empty() && (!universe || universe->empty())) throw InputError("edge list is empty");

  std::vector<std::string> ids;
  if (universe) {
    ids = *universe;
  } else {
    for (const Raw& r : raw) {
      ids.push_back(r.u);
      ids.push_back(r.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  const auto index = index_of(ids);
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const Raw& r : raw) {
    auto u = index.find(r.u), v = index.find(r.v);
    if (u == index.end()) throw InputError("unknown vertex '" + r.u + "'");
    if (v == index.end()) throw InputError("unknown vertex '" + r.v + "'");
    edges.push_back({u->second, v->second, r.w});
  }
  return build(std::move(ids), std::move(edges), threshold);
}

WeightedGraph read_edge_list(const std::filesystem::path& path, const std::vector<std::string>* universe,
                             Weight threshold) {
  auto in = open_input(path);
  return read_edge_list(in, universe, threshold);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  std::vector<Edge> lines(g.edges().begin(), g.edges().end());
  if (g.vertex_count() >= 2) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!g.is_isolated(v)) continue;
      const VertexId partner = v == 0 ? 1 : 0;
      lines.push_back({std::min(v, partner), std::max(v, partner), 0});
    }
  }
  std::sort(lines.begin(), lines.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  lines.erase(std::unique(lines.begin(), lines.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              lines.end());
  for (const Edge& e : lines) out << g.id(e.u) << '\t' << g.id(e.v) << '\t' << format_weight(e.w) << '\n';
}

WeightedGraph read_matrix_market(std::istream& in, const std::vector<std::string>* universe, Weight threshold) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw InputError("empty Matrix Market file");
  std::istringstream header(line);
  std::string banner, object, layout, field, symmetry;
  header >> banner >> object >> layout >> field >> symmetry;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  field = lower(field);
  symmetry = lower(symmetry);
  if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(layout) != "coordinate") {
    throw InputError("expected a '%%MatrixMarket matrix coordinate' header");
  }
  if (field != "real" && field != "integer" && field != "pattern") {
    throw InputError("unsupported Matrix Market field '" + field + "'");
  }
  if (symmetry != "symmetric" && symmetry != "general") {
    throw InputError("unsupported Matrix Market symmetry '" + symmetry + "'");
  }
  const bool symmetric = symmetry == "symmetric";
  const bool pattern = field == "pattern";

  std::size_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  SymmetricAccumulator acc;
  std::size_t read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%' || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    if (!have_size) {
      if (!(fields >> rows >> cols >> nnz)) throw InputError(where(line_no) + "malformed size line");
      if (rows != cols) throw InputError("matrix is not square");
      if (universe && universe->size() != rows) {
        throw InputError("matrix dimension " + std::to_string(rows) + " does not match " +
                         std::to_string(universe->size()) + " vertices");
      }
      have_size = true;
      continue;
    }
    std::size_t i = 0, j = 0;
    std::string value = "1";
    if (!(fields >> i >> j) || (!pattern && !(fields >> value))) {
      throw InputError(where(line_no) + "malformed entry");
    }
    if (i < 1 || j < 1 || i > rows || j > cols) throw InputError(where(line_no) + "index out of range");
    Weight w;
    try {
      w = parse_weight(value);
    } catch (const InputError& e) {
      throw InputError(where(line_no) + e.what());
    }
    acc.add(static_cast<VertexId>(i - 1), static_cast<VertexId>(j - 1), w, symmetric, line_no);
    ++read;
  }
  if (!have_size) throw InputError("Matrix Market file has no size line");
  if (read != nnz) throw InputError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(read));
  return build(universe ? *universe : numbered_ids(rows), acc.edges(), threshold);
}

WeightedGraph read_matrix_market(const std::filesystem::path& path, const std::vector<std::string>* universe,
                                 Weight threshold) {
  auto in = open_input(path);
  return read_matrix_market(in, universe, threshold);
}

WeightedGraph read_dense_matrix(std::istream& in, const std::vector<std::string>* universe, Weight threshold) {
  std::vector<std::vector<Weight>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::vector<Weight>& row = rows.emplace_back();
    std::string token;
    while (fields >> token) {
      try {
        row.push_back(parse_weight(token));
      } catch (const InputError& e) {
        throw InputError(where(line_no) + e.what());
      }
    }
  }
  const std::size_t n = rows.size();
  if (n == 0) throw InputError("dense matrix is empty");
  if (universe && universe->size() != n) {
    throw InputError("matrix dimension " + std::to_string(n) + " does not match " +
                     std::to_string(universe->size()) + " vertices");
  }
  SymmetricAccumulator acc;
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw InputError("dense matrix row " + std::to_string(i + 1) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] != 0 || i == j) acc.add(static_cast<VertexId>(i), static_cast<VertexId>(j), rows[i][j], false, i + 1);
    }
  }
  return build(universe ? *universe : numbered_ids(n), acc.edges(), threshold);
}

WeightedGraph read_dense_matrix(const std::filesystem::path& path, const std::vector<std::string>* universe,
                                Weight threshold) {
  auto in = open_input(path);
  return read_dense_matrix(in, universe, threshold);
}

LabelAssignment read_labels(std::istream& in, const WeightedGraph& g) {
  LabelAssignment labels(g.vertex_count());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 2) throw InputError(where(line_no) + "expected vertex_id<TAB>label");
    const auto v = g.find(fields[0]);
    if (!v) throw InputError(where(line_no) + "unknown vertex '" + fields[0] + "'");
    if (labels.is_labeled(*v)) throw InputError(where(line_no) + "vertex '" + fields[0] + "' labeled twice");
    labels.set(*v, parse_binary(fields[1], line_no));
  }
  return labels;
}

LabelAssignment read_labels(const std::filesystem::path& path, const WeightedGraph& g) {
  auto in = open_input(path);
  return read_labels(in, g);
}

void write_labels(std::ostream& out, const WeightedGraph& g, const LabelAssignment& labels) {
  for (VertexId v : labels.labeled_vertices()) out << g.id(v) << '\t' << *labels.label(v) << '\n';
}

LabelAssignment LabelMatrix::column(std::size_t cls, const WeightedGraph& g) const {
  if (cls >= class_names.size()) throw DomainError("class index out of range");
  LabelAssignment labels(g.vertex_count());
  for (std::size_t r = 0; r < vertex_ids.size(); ++r) {
    if (entries[r][cls] < 0) continue;
    const auto v = g.find(vertex_ids[r]);
    if (!v) throw InputError("labeled vertex '" + vertex_ids[r] + "' is not in the graph");
    labels.set(*v, entries[r][cls]);
  }
  return labels;
}

LabelMatrix read_label_matrix(std::istream& in) {
  LabelMatrix m;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto fields = split_tabs(line);
    if (!have_header) {
      if (fields.size() < 2) throw InputError(where(line_no) + "label matrix header needs at least one class");
      m.class_names.assign(fields.begin() + 1, fields.end());
      have_header = true;
      continue;
    }
    if (fields.size() != m.class_names.size() + 1) {
      throw InputError(where(line_no) + "expected " + std::to_string(m.class_names.size() + 1) + " columns");
    }
    if (!seen.insert(fields[0]).second) throw InputError(where(line_no) + "duplicate vertex '" + fields[0] + "'");
    m.vertex_ids.push_back(fields[0]);
    auto& row = m.entries.emplace_back();
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const std::string& f = fields[c];
      row.push_back(f == "NA" || f == "-" || f.empty() ? std::int8_t{-1}
                                                       : static_cast<std::int8_t>(parse_binary(f, line_no)));
    }
  }
  if (!have_header) throw InputError("label matrix is empty");
  return m;
}

LabelMatrix read_label_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_label_matrix(in);
}

void write_label_matrix(std::ostream& out, const LabelMatrix& matrix) {
  out << "vertex";
  for (const auto& c : matrix.class_names) out << '\t' << c;
  out << '\n';
  for (std::size_t r = 0; r < matrix.vertex_ids.size(); ++r) {
    out << matrix.vertex_ids[r];
    for (std::int8_t e : matrix.entries[r]) {
      out << '\t';
      if (e < 0) {
        out << "NA";
      } else {
        out << static_cast<int>(e);
      }
    }
    out << '\n';
  }
}

namespace {

MatrixFormat parse_format(const std::string& s) {
  if (s == "tsv") return MatrixFormat::kEdgeList;
  if (s == "mtx") return MatrixFormat::kMatrixMarket;
  if (s == "dense") return MatrixFormat::kDense;
  throw InputError("unknown matrix format '" + s + "'");
}

const char* format_name(MatrixFormat f) {
  switch (f) {
    case MatrixFormat::kEdgeList: return "tsv";
    case MatrixFormat::kMatrixMarket: return "mtx";
    case MatrixFormat::kDense: return "dense";
  }
  return "tsv";
}

}  // namespace

DatasetManifest read_manifest(const std::filesystem::path& path) {
  auto in = open_input(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("manifest '" + path.string() + "': " + e.what());
  }
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q : base / q;
  };

  DatasetManifest m;
  try {
    std::set<std::string> names;
    for (const auto& entry : doc.at("matrices")) {
      MatrixEntry me;
      me.name = entry.at("name").get<std::string>();
      if (!names.insert(me.name).second) throw InputError("duplicate matrix name '" + me.name + "'");
      me.path = resolve(entry.at("path").get<std::string>());
      me.format = parse_format(entry.value("format", std::string("tsv")));
      if (entry.contains("threshold")) me.threshold = weight_from_real(entry.at("threshold").get<double>());
      me.evaluate = entry.value("evaluate", true);
      m.matrices.push_back(std::move(me));
    }
    if (m.matrices.empty()) throw InputError("manifest lists no matrices");
    m.labels = resolve(doc.at("labels").get<std::string>());
    if (doc.contains("integrate")) {
      m.integrate = doc.at("integrate").get<std::vector<std::string>>();
      for (const auto& name : m.integrate) {
        if (!names.count(name)) throw InputError("integrate lists unknown matrix '" + name + "'");
      }
    }
    if (doc.contains("expected_stats")) {
      for (const auto& [name, s] : doc.at("expected_stats").items()) {
        m.expected_stats[name] = {s.at("components").get<std::size_t>(), s.at("vertices").get<std::size_t>(),
                                  s.at("edges").get<std::size_t>()};
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("manifest '" + path.string() + "': " + e.what());
  }
  return m;
}

std::string manifest_json(const DatasetManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["matrices"] = nlohmann::ordered_json::array();
  for (const auto& me : manifest.matrices) {
    doc["matrices"].push_back({{"name", me.name}, {"path", me.path.generic_string()}, {"format", format_name(me.format)}});
  }
  doc["labels"] = manifest.labels.generic_string();
  if (!manifest.integrate.empty()) doc["integrate"] = manifest.integrate;
  if (!manifest.expected_stats.empty()) {
    for (const auto& [name, s] : manifest.expected_stats) {
      doc["expected_stats"][name] = {{"components", s.components}, {"vertices", s.vertices}, {"edges", s.edges}};
    }
  }
  return doc.dump(2) + "\n";
}

Dataset load_dataset(const DatasetManifest& manifest) {
  for (const auto& me : manifest.matrices) {
    if (!std::filesystem::exists(me.path)) throw InputError("missing matrix file '" + me.path.string() + "'");
  }
  if (!std::filesystem::exists(manifest.labels)) {
    throw InputError("missing label file '" + manifest.labels.string() + "'");
  }
  const LabelMatrix label_matrix = read_label_matrix(manifest.labels);

  Dataset ds;
  ds.vertex_ids = label_matrix.vertex_ids;
  ds.expected_stats = manifest.expected_stats;
  for (const auto& me : manifest.matrices) {
    WeightedGraph g;
    try {
      switch (me.format) {
        case MatrixFormat::kEdgeList: g = read_edge_list(me.path, &ds.vertex_ids, me.threshold); break;
        case MatrixFormat::kMatrixMarket: g = read_matrix_market(me.path, &ds.vertex_ids, me.threshold); break;
        case MatrixFormat::kDense: g = read_dense_matrix(me.path, &ds.vertex_ids, me.threshold); break;
      }
    } catch (const InputError& e) {
      throw InputError(me.path.string() + ": " + e.what());
    }
    ds.graphs.push_back({me.name, std::move(g)});
    ds.evaluate.push_back(me.evaluate);
  }
  if (!manifest.integrate.empty()) {
    std::vector<WeightedGraph> members;
    for (const auto& name : manifest.integrate) {
      for (const auto& ng : ds.graphs) {
        if (ng.name == name) members.push_back(ng.graph);
      }
    }
    ds.graphs.push_back({kIntegratedGraphName, integrate(members)});
    ds.evaluate.push_back(true);
  }
  const WeightedGraph& reference = ds.graphs.front().graph;
  for (std::size_t c = 0; c < label_matrix.class_names.size(); ++c) {
    ds.classes.push_back({label_matrix.class_names[c], label_matrix.column(c, reference)});
  }
  return ds;
}

StatsCheck validate_stats(const std::string& name, const WeightedGraph& g, const std::optional<GraphStats>& expected) {
  StatsCheck check;
  check.graph = name;
  check.actual = graph_stats(g);
  check.expected = expected;
  if (!expected) return check;
  auto compare = [&](const char* what, std::size_t want, std::size_t got) {
    if (want != got) {
      check.mismatches.push_back(std::string(what) + ": expected " + std::to_string(want) + ", found " +
                                 std::to_string(got));
    }
  };
  compare("components", expected->components, check.actual.components);
  compare("vertices", expected->vertices, check.actual.vertices);
  compare("edges", expected->edges, check.actual.edges);
  check.status = check.mismatches.empty() ? StatsCheck::Status::kMatched : StatsCheck::Status::kMismatched;
  return check;
}

}  // namespace tilo
