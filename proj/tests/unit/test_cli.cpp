#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include <json.hpp>

namespace fs = std::filesystem;
using flightlab::cli::run;

namespace {

struct Scratch {
  fs::path root;
  Scratch() {
    root = fs::temp_directory_path() / ("flightlab_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Scratch() { fs::remove_all(root); }
  std::string dir(const std::string& name) const { return (root / name).string(); }
};

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"flightlab"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json manifest(const std::string& dir) { return nlohmann::json::parse(slurp(fs::path(dir) / "manifest.json")); }

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header = nullptr) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("sample writes the requested rows inside the cone") {
  Scratch s;
  const auto r = invoke({"--seed", "7", "--out-dir", s.dir("a"), "sample", "--law", "epd", "--alpha", "0.5", "--c",
                         "1", "--t", "1", "--n", "1000"});
  REQUIRE(r.code == 0);
  std::string header;
  const auto rows = read_csv(fs::path(s.dir("a")) / "samples.csv", &header);
  CHECK(header == "x1,boundary");
  CHECK(rows.size() == 1000);
  for (const auto& row : rows) CHECK(std::abs(row[0]) < 1.0);
  const auto m = manifest(s.dir("a"));
  CHECK(m["command"] == "sample");
  CHECK(m["seed"] == 7);
  CHECK(m["summary"]["n"] == 1000);
}

TEST_CASE("same command twice gives identical files") {
  Scratch s;
  for (const char* d : {"a", "b"}) {
    REQUIRE(invoke({"--seed", "3", "--out-dir", s.dir(d), "sample", "--process", "telegraph", "--rate", "tanh:1",
                    "--n", "5000"})
                .code == 0);
  }
  CHECK(slurp(fs::path(s.dir("a")) / "samples.csv") == slurp(fs::path(s.dir("b")) / "samples.csv"));
  CHECK(slurp(fs::path(s.dir("a")) / "manifest.json") == slurp(fs::path(s.dir("b")) / "manifest.json"));
  // a replay with more threads reproduces the bytes
  REQUIRE(invoke({"--threads", "3", "--out-dir", s.dir("c"), "replay", s.dir("a") + "/manifest.json"}).code == 0);
  CHECK(slurp(fs::path(s.dir("a")) / "samples.csv") == slurp(fs::path(s.dir("c")) / "samples.csv"));
}

TEST_CASE("four-direction boundary fraction") {
  Scratch s;
  REQUIRE(invoke({"--seed", "1", "--out-dir", s.dir("a"), "sample", "--process", "four-dir", "--rate", "constant:1",
                  "--c", "1", "--t", "3", "--n", "10000"})
              .code == 0);
  const double f = manifest(s.dir("a"))["summary"]["boundary_fraction"];
  const double p = std::exp(-3.0);
  CHECK(std::abs(f - p) <= 3.0 * std::sqrt(p * (1.0 - p) / 10000.0));
}

TEST_CASE("density tables") {
  Scratch s;
  REQUIRE(invoke({"--out-dir", s.dir("coth"), "density", "--law", "coth", "--lambda", "1", "--c", "1", "--t", "3"})
              .code == 0);
  REQUIRE(invoke({"--out-dir", s.dir("tanh"), "density", "--law", "tanh", "--lambda", "1", "--c", "1", "--t", "3"})
              .code == 0);
  const double coth_max = manifest(s.dir("coth"))["summary"]["max_value"];
  const double tanh_max = manifest(s.dir("tanh"))["summary"]["max_value"];
  CHECK(coth_max > tanh_max);

  REQUIRE(invoke({"--out-dir", s.dir("arc"), "density", "--law", "epd", "--alpha", "0.5", "--points", "101"}).code ==
          0);
  const auto arc = read_csv(fs::path(s.dir("arc")) / "density.csv");
  REQUIRE(arc.size() == 101);
  for (std::size_t i = 1; i + 1 < arc.size(); ++i) {
    CHECK(arc[i][1] == doctest::Approx(arc[arc.size() - 1 - i][1]).epsilon(1e-10));
  }
  CHECK(arc[1][1] > arc[50][1]);
  CHECK(arc[25][1] > arc[50][1]);

  REQUIRE(invoke({"--out-dir", s.dir("even"), "density", "--law", "parity-even", "--lambda", "1", "--c", "1", "--t",
                  "3", "--grid", "radial"})
              .code == 0);
  const auto even = read_csv(fs::path(s.dir("even")) / "density.csv");
  REQUIRE(even.size() > 10);
  CHECK(even.front()[0] == 0.0);
  for (std::size_t i = 1; i + 1 < even.size(); ++i) CHECK(even[i][1] < even[i - 1][1]);
}

TEST_CASE("verify reports orders and exact coefficients") {
  Scratch s;
  const auto r = invoke({"--out-dir", s.dir("a"), "verify", "--suite", "epd-1d-coth"});
  CHECK(r.code == 0);
  const auto rows = read_csv(fs::path(s.dir("a")) / "residuals.csv");
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(rows.back()[4] - 2.0) < 0.2);
  CHECK(invoke({"--out-dir", s.dir("b"), "verify", "--suite", "transmute-gaussian", "--alpha", "1.5"}).code == 0);
  CHECK(invoke({"--out-dir", s.dir("c"), "verify", "--suite", "coeffs-constant-lambda"}).code == 0);
  CHECK(manifest(s.dir("c"))["summary"]["exact_match"] == true);
}

TEST_CASE("exit codes") {
  Scratch s;
  // missing seed, unknown flag, bad value, unknown law
  CHECK(invoke({"--out-dir", s.dir("a"), "sample", "--law", "epd", "--n", "10"}).code == 2);
  CHECK(invoke({"--seed", "1", "--out-dir", s.dir("a"), "sample", "--law", "epd", "--bogus", "1"}).code == 2);
  CHECK(invoke({"--seed", "1", "--out-dir", s.dir("a"), "sample", "--law", "epd", "--alpha", "-1"}).code == 2);
  CHECK(invoke({"--out-dir", s.dir("a"), "density", "--law", "nonsense"}).code == 2);
  CHECK(invoke({"--out-dir", s.dir("a"), "verify", "--suite", "nonsense"}).code == 2);
  // an impossible KS threshold fails the comparison
  const auto r = invoke({"--seed", "1", "--out-dir", s.dir("b"), "compare", "--law", "epd", "--alpha", "0.5", "--n",
                         "2000", "--ks-threshold", "1e-9"});
  CHECK(r.code == 3);
  CHECK(manifest(s.dir("b"))["summary"]["passed"] == false);
  const auto ok = invoke({"--seed", "1", "--out-dir", s.dir("c"), "compare", "--law", "epd", "--alpha", "0.5", "--n",
                          "20000"});
  CHECK(ok.code == 0);
  CHECK(manifest(s.dir("c"))["summary"]["passed"] == true);
}

TEST_CASE("config files override flags") {
  Scratch s;
  fs::create_directories(s.root);
  const auto cfg = s.root / "cfg.json";
  std::ofstream(cfg) << R"({"law": "epd", "alpha": 1.0, "n": 50, "seed": 9})";
  REQUIRE(invoke({"--config", cfg.string(), "--out-dir", s.dir("a"), "sample", "--n", "10"}).code == 0);
  const auto m = manifest(s.dir("a"));
  CHECK(m["config"]["n"] == 50);
  CHECK(m["seed"] == 9);
  std::ofstream(s.root / "bad.json") << R"({"law": "epd", "colour": 1})";
  CHECK(invoke({"--config", (s.root / "bad.json").string(), "--seed", "1", "--out-dir", s.dir("b"), "sample"}).code ==
        2);
}
