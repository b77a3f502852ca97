#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "condtest/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  std::vector<const char*> argv{"condtest"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return condtest::run_cli(static_cast<int>(argv.size()), argv.data());
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("condtest_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("flag errors exit with code 2") {
  CHECK(run({}) == 2);                               // missing subcommand
  CHECK(run({"test", "--gen", "complete:8"}) == 2);  // missing alpha/epsilon
  CHECK(run({"bogus-mode"}) == 2);
  CHECK(run({"verify-cheeger", "--gen", "dumbbell:0"}) == 2);      // infeasible generator
  CHECK(run({"verify-cheeger", "--gen", "dumbbell:nope"}) == 2);   // unparseable spec
  CHECK(run({"verify-cheeger"}) == 2);                             // no graph at all
  CHECK(run({"verify-cheeger", "--gen", "complete:30"}) == 2);     // brute force too large
}

TEST_CASE("input problems exit with code 3") {
  TempDir tmp;
  CHECK(run({"verify-cheeger", "--graph", tmp.file("missing.txt")}) == 3);
  const std::string bad = tmp.file("bad.txt");
  std::ofstream(bad) << "2 2\n1 2\n2 2\n";
  CHECK(run({"verify-cheeger", "--graph", bad}) == 3);
}

TEST_CASE("graph files load through every mode") {
  TempDir tmp;
  const std::string file = tmp.file("c4.txt");
  std::ofstream(file) << "# a 4-cycle\n4 4\n1 2\n2 3\n3 4\n4 1\n";
  const std::string out = tmp.file("out.json");
  CHECK(run({"brute-conductance", "--graph", file, "--out", out}) == 0);
  auto report = parse_file(out);
  CHECK(report["min_conductance"].get<double>() == doctest::Approx(0.5));
  CHECK(report["graph"]["name"] == file);
}

TEST_CASE("zero-valued overrides are flag errors") {
  CHECK(run({"test", "--gen", "complete:8", "--alpha", "0.5", "--epsilon", "0.3",
             "--walks", "0"}) == 2);
  CHECK(run({"test", "--gen", "complete:8", "--alpha", "0.5", "--epsilon", "0.3",
             "--length", "0"}) == 2);
}

TEST_CASE("verify-cheeger on dumbbell(4) passes") {
  TempDir tmp;
  const std::string out = tmp.file("cheeger.json");
  CHECK(run({"verify-cheeger", "--gen", "dumbbell:4", "--out", out}) == 0);
  auto report = parse_file(out);
  CHECK(report["kind"] == "cheeger_report");
  CHECK(report["pass"] == true);
  CHECK(report["graph"]["n"] == 8);
}

TEST_CASE("brute-conductance reports the exhaustive minimum") {
  TempDir tmp;
  const std::string out = tmp.file("brute.json");
  CHECK(run({"brute-conductance", "--gen", "complete:4", "--out", out}) == 0);
  auto report = parse_file(out);
  CHECK(report["min_conductance"].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(report["cheeger_constant"].get<double>() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("verify-lemmas on dumbbell(4) passes") {
  TempDir tmp;
  const std::string out = tmp.file("lemmas.json");
  CHECK(run({"verify-lemmas", "--gen", "dumbbell:4", "--length", "30", "--out", out}) == 0);
  auto report = parse_file(out);
  CHECK(report["pass"] == true);
  CHECK(report["whole_set"]["rows"].size() == 31);
  CHECK(report["subset"]["all_pass"] == true);
  CHECK(report["heavy_coefficient"]["pass"] == true);
}

TEST_CASE("mixing mode on K16") {
  TempDir tmp;
  const std::string out = tmp.file("mixing.json");
  CHECK(run({"mixing", "--gen", "complete:16", "--length", "20", "--out", out}) == 0);
  auto report = parse_file(out);
  CHECK(report["pass"] == true);
}

TEST_CASE("matrix export writes walk, laplacian and spectrum CSVs") {
  TempDir tmp;
  const std::string prefix = tmp.file("k4");
  CHECK(run({"verify-cheeger", "--gen", "complete:4", "--export-matrices", prefix,
             "--out", tmp.file("r.json")}) == 0);
  for (const char* suffix : {".walk.csv", ".laplacian.csv", ".spectrum.csv"}) {
    const std::string content = slurp(prefix + suffix);
    CHECK(!content.empty());
    CHECK(std::count(content.begin(), content.end(), '\n') == 4);
  }
  // walk matrix row: diagonal 1/2, off-diagonal 1/6 for K4
  std::istringstream first_line(slurp(prefix + ".walk.csv"));
  std::string cell;
  std::getline(first_line, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(0.5));
}

TEST_CASE("test mode end to end with csv and determinism") {
  TempDir tmp;
  const std::string out_a = tmp.file("a.json");
  const std::string out_b = tmp.file("b.json");
  const std::string csv = tmp.file("trials.csv");
  std::vector<std::string> base{"test",    "--gen",   "complete:8", "--alpha", "0.6",
                                "--epsilon", "0.3",   "--trials",   "3",       "--length",
                                "30",      "--seed",  "7",          "--deterministic"};

  auto with = [&](std::initializer_list<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra);
    return args;
  };

  CHECK(run(with({"--out", out_a, "--csv", csv})) == 0);
  auto report = parse_file(out_a);
  CHECK(report["kind"] == "aggregate_report");
  CHECK(report["trials"] == 3);
  CHECK(report["accept_fraction"].get<double>() == doctest::Approx(1.0));
  CHECK(report["config"]["overridden"].get<std::vector<std::string>>() ==
        std::vector<std::string>{"length"});

  std::istringstream csv_in(slurp(csv));
  std::string line;
  int rows = 0;
  while (std::getline(csv_in, line)) ++rows;
  CHECK(rows == 4);  // header + one row per trial

  // identical bytes on a re-run, and independent of the worker thread count
  CHECK(run(with({"--out", out_b})) == 0);
  CHECK(slurp(out_a) == slurp(out_b));
  const std::string out_c = tmp.file("c.json");
  CHECK(run(with({"--out", out_c, "--threads", "4"})) == 0);
  CHECK(slurp(out_a) == slurp(out_c));
}

TEST_CASE("single-trial test mode emits a run report with histograms") {
  TempDir tmp;
  const std::string out = tmp.file("run.json");
  CHECK(run({"test", "--gen", "dumbbell:4", "--alpha", "0.5", "--epsilon", "0.3",
             "--walks", "1000", "--length", "10", "--sources", "1", "--histograms",
             "--deterministic", "--out", out}) == 0);
  auto report = parse_file(out);
  CHECK(report["kind"] == "run_report");
  CHECK(report["sources"] == nlohmann::json::array({1}));
  CHECK(report["conservation_ok"] == true);
  long long total = 0;
  for (const auto& [vertex, count] : report["endpoint_histograms"]["1"].items())
    total += count.get<long long>();
  CHECK(total == 1000);
}

TEST_CASE("transcript lines cover every executed round") {
  TempDir tmp;
  const std::string transcript = tmp.file("t.jsonl");
  CHECK(run({"test", "--gen", "complete:6", "--alpha", "0.5", "--epsilon", "0.3",
             "--trials", "2", "--length", "12", "--transcript", transcript,
             "--deterministic", "--out", tmp.file("r.json")}) == 0);
  std::istringstream in(slurp(transcript));
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    auto record = nlohmann::json::parse(line);
    CHECK(record["messages"].get<long long>() <= 2 * 15);
    ++lines;
  }
  CHECK(lines == 24);
}
