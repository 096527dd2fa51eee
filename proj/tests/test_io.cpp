#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tilo/error.hpp"
#include "tilo/io.hpp"

using namespace tilo;
using fixtures::kUnit;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("tilo_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

WeightedGraph parse_edges(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace

TEST_CASE("edge list parsing") {
  const auto g = parse_edges("# comment\nb\tc\t2.5\na\tb\t1\n\n");
  CHECK(g.vertex_ids() == std::vector<std::string>{"a", "b", "c"});
  CHECK(g.weight(1, 2) == 5 * kUnit / 2);
  CHECK_THROWS_AS(parse_edges(""), InputError);
  CHECK_THROWS_AS(parse_edges("a\tb\n"), InputError);
  CHECK_THROWS_AS(parse_edges("a\tb\tx\n"), InputError);
  CHECK_THROWS_AS(parse_edges("a\tb\t1\nb\ta\t2\n"), InputError);
  CHECK_THROWS_AS(parse_edges("a\ta\t1\n"), InputError);
  CHECK_THROWS_AS(parse_edges("a\tb\t-1\n"), InputError);

  const std::vector<std::string> universe{"x", "a", "b"};
  std::istringstream in("a\tb\t1\n");
  const auto aligned = read_edge_list(in, &universe);
  CHECK(aligned.vertex_count() == 3);
  CHECK(aligned.is_isolated(0));
  std::istringstream unknown("a\tq\t1\n");
  CHECK_THROWS_AS(read_edge_list(unknown, &universe), InputError);

  std::istringstream thresholded("a\tb\t0.5\nb\tx\t2\n");
  CHECK(read_edge_list(thresholded, &universe, kUnit).edge_count() == 1);
}

TEST_CASE("edge lists round-trip through write and read") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = fixtures::random_connected(3 + seed % 15, 0.3, 1, 9, seed);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (Edge& e : edges) e.w = e.w / 7 + 1;  // awkward decimals
    std::vector<std::string> ids;
    for (VertexId v = 0; v <= g.vertex_count(); ++v) ids.push_back("p" + std::to_string(v * 37 % 101));
    const WeightedGraph h(ids, edges);  // last vertex isolated

    std::ostringstream first;
    write_edge_list(first, h);
    const auto loaded = parse_edges(first.str());
    CHECK(loaded.vertex_count() == h.vertex_count());
    CHECK(loaded.edge_count() == h.edge_count());
    CHECK(loaded.total_weight() == h.total_weight());
    for (const Edge& e : h.edges()) {
      CHECK(loaded.weight(*loaded.find(h.id(e.u)), *loaded.find(h.id(e.v))) == e.w);
    }

    std::ostringstream second;
    write_edge_list(second, loaded);
    const auto back = parse_edges(second.str());
    std::ostringstream third;
    write_edge_list(third, back);
    CHECK(second.str() == third.str());
    CHECK(back.vertex_ids() == loaded.vertex_ids());
  }
}

TEST_CASE("Matrix Market input") {
  std::istringstream sym(
      "%%MatrixMarket matrix coordinate real symmetric\n% c\n3 3 4\n1 1 9\n2 1 1.5\n3 2 2\n3 1 0\n");
  const auto g = read_matrix_market(sym);
  CHECK(g.vertex_ids() == std::vector<std::string>{"1", "2", "3"});
  CHECK(g.edge_count() == 2);
  CHECK(g.weight(0, 1) == 3 * kUnit / 2);

  std::istringstream general("%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 2 3\n2 1 1\n");
  CHECK(read_matrix_market(general).weight(0, 1) == 2 * kUnit);

  std::istringstream pattern("%%MatrixMarket matrix coordinate pattern symmetric\n2 2 1\n2 1\n");
  CHECK(read_matrix_market(pattern).weight(0, 1) == kUnit);

  std::istringstream dup("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n2 1 1\n1 2 1\n");
  CHECK_THROWS_AS(read_matrix_market(dup), InputError);
  std::istringstream count("%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n2 1 1\n");
  CHECK_THROWS_AS(read_matrix_market(count), InputError);
  std::istringstream bad("%%MatrixMarket matrix array real general\n2 2\n");
  CHECK_THROWS_AS(read_matrix_market(bad), InputError);

  const std::vector<std::string> universe{"a", "b"};
  std::istringstream wrong("%%MatrixMarket matrix coordinate real symmetric\n3 3 0\n");
  CHECK_THROWS_AS(read_matrix_market(wrong, &universe), InputError);
}

TEST_CASE("dense matrices are symmetrized") {
  std::istringstream in("0 1 0\n3 0 2\n0 2 5\n");
  const auto g = read_dense_matrix(in);
  CHECK(g.weight(0, 1) == 2 * kUnit);
  CHECK(g.weight(1, 2) == 2 * kUnit);
  CHECK(g.edge_count() == 2);
  std::istringstream ragged("0 1\n1\n");
  CHECK_THROWS_AS(read_dense_matrix(ragged), InputError);
}

TEST_CASE("labels and label matrices") {
  const auto g = parse_edges("a\tb\t1\nb\tc\t1\n");
  std::istringstream in("a\t1\nc\t0\n");
  const auto labels = read_labels(in, g);
  CHECK(labels.labeled_count() == 2);
  CHECK(*labels.label(0) == 1);
  std::istringstream unknown("z\t1\n");
  CHECK_THROWS_AS(read_labels(unknown, g), InputError);
  std::istringstream nonbinary("a\t2\n");
  CHECK_THROWS_AS(read_labels(nonbinary, g), InputError);
  std::istringstream twice("a\t1\na\t0\n");
  CHECK_THROWS_AS(read_labels(twice, g), InputError);

  std::istringstream matrix_in("protein\tc1\tc2\na\t1\t0\nb\tNA\t1\nc\t0\t0\n");
  const auto m = read_label_matrix(matrix_in);
  CHECK(m.class_names == std::vector<std::string>{"c1", "c2"});
  const auto c1 = m.column(0, g);
  CHECK(c1.labeled_count() == 2);
  CHECK_FALSE(c1.is_labeled(1));
  std::ostringstream out;
  write_label_matrix(out, m);
  CHECK(out.str() == "vertex\tc1\tc2\na\t1\t0\nb\tNA\t1\nc\t0\t0\n");
  std::istringstream badrow("v\tc1\na\t1\t0\n");
  CHECK_THROWS_AS(read_label_matrix(badrow), InputError);
}

TEST_CASE("load_dataset from a manifest") {
  const auto dir = scratch_dir("dataset");
  write_file(dir / "labels.tsv", "vertex\tclassA\na\t1\nb\t0\nc\t1\nd\t0\n");
  write_file(dir / "w1.tsv", "a\tb\t1\n");
  write_file(dir / "w2.mtx", "%%MatrixMarket matrix coordinate real symmetric\n4 4 2\n2 1 3\n4 3 1\n");
  write_file(dir / "manifest.json", R"({
    "matrices": [{"name": "W1", "path": "w1.tsv", "format": "tsv"},
                 {"name": "W2", "path": "w2.mtx", "format": "mtx"}],
    "labels": "labels.tsv",
    "integrate": ["W1", "W2"],
    "expected_stats": {"W1": {"components": 1, "vertices": 2, "edges": 1},
                       "W2": {"components": 2, "vertices": 4, "edges": 3}}
  })");
  const auto manifest = read_manifest(dir / "manifest.json");
  const auto ds = load_dataset(manifest);
  REQUIRE(ds.graphs.size() == 3);
  CHECK(ds.graphs[2].name == kIntegratedGraphName);
  CHECK(ds.graphs[2].graph.weight(0, 1) == 2 * kUnit);
  CHECK(ds.graphs[2].graph.weight(2, 3) == kUnit / 2);
  REQUIRE(ds.classes.size() == 1);
  CHECK(ds.classes[0].labels.positive_count() == 2);

  const auto ok = validate_stats("W1", ds.graphs[0].graph, ds.expected_stats.at("W1"));
  CHECK(ok.status == StatsCheck::Status::kMatched);
  CHECK(ok.mismatches.empty());
  const auto off = validate_stats("W2", ds.graphs[1].graph, ds.expected_stats.at("W2"));
  CHECK(off.status == StatsCheck::Status::kMismatched);
  CHECK(off.mismatches.size() == 1);
  const auto unchecked = validate_stats("Integrated", ds.graphs[2].graph, std::nullopt);
  CHECK(unchecked.status == StatsCheck::Status::kUnchecked);

  write_file(dir / "missing.json", R"({"matrices": [{"name": "W", "path": "nope.tsv"}], "labels": "labels.tsv"})");
  CHECK_THROWS_AS(load_dataset(read_manifest(dir / "missing.json")), InputError);
  write_file(dir / "broken.json", "{");
  CHECK_THROWS_AS(read_manifest(dir / "broken.json"), InputError);
  write_file(dir / "dups.json", R"({"matrices": [{"name": "W", "path": "w1.tsv"}, {"name": "W", "path": "w1.tsv"}],
    "labels": "labels.tsv"})");
  CHECK_THROWS_AS(read_manifest(dir / "dups.json"), InputError);
}

TEST_CASE("two-vertex toy manifest") {
  const auto dir = scratch_dir("toy");
  write_file(dir / "labels.tsv", "id\tonly\nx\t1\ny\t0\n");
  write_file(dir / "g.tsv", "x\ty\t1\n");
  write_file(dir / "m.json", R"({"matrices": [{"name": "G", "path": "g.tsv"}], "labels": "labels.tsv"})");
  const auto ds = load_dataset(read_manifest(dir / "m.json"));
  CHECK(ds.graphs.size() == 1);
  CHECK(ds.classes.size() == 1);
  CHECK(ds.graphs[0].graph.edge_count() == 1);
}
