#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "tilo_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(TILO_CLI_PATH) + " " + args + " 2>/dev/null >/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::map<std::string, std::string> two_columns(const fs::path& p) {
  std::map<std::string, std::string> out;
  std::istringstream in(slurp(p));
  std::string a, b;
  while (in >> a >> b) out[a] = b;
  return out;
}

const char* kBarbell =
    "a\tb\t1\nb\tc\t1\na\tc\t1\nc\td\t1\nd\te\t1\ne\tf\t1\nd\tf\t1\n";

struct Scratch {
  Scratch() {
    fs::remove_all(kDir);
    fs::create_directories(kDir);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Scratch, "cluster") {
  write_file(kDir / "barbell.tsv", kBarbell);
  REQUIRE(run("cluster " + (kDir / "barbell.tsv").string() + " --seed 3 --out " + (kDir / "c1.tsv").string()) == 0);
  const auto clusters = two_columns(kDir / "c1.tsv");
  CHECK(clusters.size() == 6);
  std::set<std::string> ids;
  for (const auto& [v, c] : clusters) ids.insert(c);
  CHECK(ids.size() == 2);
  CHECK(clusters.at("a") == clusters.at("b"));
  CHECK(clusters.at("d") == clusters.at("f"));
  CHECK(clusters.at("a") != clusters.at("e"));
  REQUIRE(run("cluster " + (kDir / "barbell.tsv").string() + " --seed 3 --out " + (kDir / "c2.tsv").string()) == 0);
  CHECK(slurp(kDir / "c1.tsv") == slurp(kDir / "c2.tsv"));

  write_file(kDir / "tri.tsv", "a\tb\t1\nb\tc\t1\na\tc\t1\n");
  REQUIRE(run("cluster " + (kDir / "tri.tsv").string() + " --seed 1 --out " + (kDir / "t.tsv").string()) == 0);
  std::set<std::string> tri;
  for (const auto& [v, c] : two_columns(kDir / "t.tsv")) tri.insert(c);
  CHECK(tri.size() == 1);

  write_file(kDir / "empty.tsv", "");
  CHECK(run("cluster " + (kDir / "empty.tsv").string() + " --seed 1") == 2);
  CHECK(run("cluster " + (kDir / "nope.tsv").string() + " --seed 1") == 2);
}

TEST_CASE_FIXTURE(Scratch, "predict") {
  write_file(kDir / "barbell.tsv", kBarbell);
  write_file(kDir / "labels.tsv", "a\t1\nb\t1\nd\t0\n");
  const std::string base = "predict " + (kDir / "barbell.tsv").string() + " " + (kDir / "labels.tsv").string();
  REQUIRE(run(base + " --bags 1 --lambda 1 --seed 5 --out " + (kDir / "p.tsv").string()) == 0);
  const auto p = two_columns(kDir / "p.tsv");
  REQUIRE(p.size() == 3);
  CHECK(p.at("c") == "1.000000");
  CHECK(p.at("e") == "0.000000");
  CHECK(p.at("f") == "0.000000");

  REQUIRE(run(base + " --seed 5 --threads 1 --out " + (kDir / "t1.tsv").string()) == 0);
  REQUIRE(run(base + " --seed 5 --threads 3 --out " + (kDir / "t3.tsv").string()) == 0);
  CHECK(slurp(kDir / "t1.tsv") == slurp(kDir / "t3.tsv"));

  write_file(kDir / "ones.tsv", "a\t1\nd\t1\n");
  REQUIRE(run("predict " + (kDir / "barbell.tsv").string() + " " + (kDir / "ones.tsv").string() +
              " --seed 2 --out " + (kDir / "o.tsv").string()) == 0);
  for (const auto& [v, prob] : two_columns(kDir / "o.tsv")) CHECK(prob == "1.000000");

  write_file(kDir / "none.tsv", "");
  CHECK(run("predict " + (kDir / "barbell.tsv").string() + " " + (kDir / "none.tsv").string() + " --seed 1") == 3);
  write_file(kDir / "bad.tsv", "zz\t1\n");
  CHECK(run("predict " + (kDir / "barbell.tsv").string() + " " + (kDir / "bad.tsv").string() + " --seed 1") == 2);
}

TEST_CASE_FIXTURE(Scratch, "synth, cv and validate") {
  const std::string prefix = (kDir / "planted").string();
  const std::string synth = "synth --blocks 20,20 --p-in 0.3 --p-out 0.01 --label-fraction 0.6 --seed 4 --out ";
  REQUIRE(run(synth + prefix) == 0);
  const std::string first = slurp(prefix + ".edges.tsv") + slurp(prefix + ".labels.tsv");
  REQUIRE(run(synth + prefix) == 0);
  CHECK(first == slurp(prefix + ".edges.tsv") + slurp(prefix + ".labels.tsv"));
  CHECK(run("cluster " + prefix + ".edges.tsv --seed 1 --out " + (kDir / "cl.tsv").string()) == 0);

  CHECK(run("synth --p-in 0.1 --p-out 0.2 --seed 1 --out " + (kDir / "bad").string()) == 2);

  const std::string report = (kDir / "report").string();
  REQUIRE(run("cv " + prefix + ".manifest.json --bags 3 --folds 3 --repeats 1 --seed 8 --out " + report) == 0);
  const std::string tsv = slurp(report + ".tsv");
  CHECK(tsv.rfind("class\tsynth\n", 0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 2);
  CHECK(fs::exists(report + ".json"));
  REQUIRE(run("cv " + prefix + ".manifest.json --bags 3 --folds 3 --repeats 1 --seed 8 --threads 2 --out " +
              report + "2") == 0);
  CHECK(slurp(report + "2.tsv") == tsv);

  write_file(kDir / "missing.json", R"({"matrices": [{"name": "W", "path": "gone.tsv"}], "labels": "x.tsv"})");
  CHECK(run("cv " + (kDir / "missing.json").string() + " --seed 1") == 2);

  CHECK(run("validate " + prefix + ".manifest.json --out " + (kDir / "v.tsv").string()) == 0);
  CHECK(slurp(kDir / "v.tsv").find("unchecked") != std::string::npos);
}

TEST_CASE("configuration errors") {
  CHECK(run("") == 3);
  CHECK(run("cluster") == 3);
  CHECK(run("predict a b --lambda 2") == 3);
}
