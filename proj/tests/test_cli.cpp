#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "andor/cli.hpp"
#include "andor/rational.hpp"

using namespace andor;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/andor_test_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_config(const RunConfig& config) {
  std::ostringstream out, err;
  int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string got;
  while (std::getline(in, got)) {
    if (got == line) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("solve prints the gate order and exact cost") {
  TempFile tree("solve.txt", "(and (or 1/2) (or 1/2 1/2))");
  RunConfig config;
  config.command = RunConfig::Command::Solve;
  config.tree_path = tree.path;
  RunResult result = run_config(config);
  CHECK(result.code == 0);
  CHECK(has_line(result.out, "gate-order: 0,1"));
  CHECK(has_line(result.out, "cost: 7/4"));
}

TEST_CASE("evaluate reports an invalid algorithm with exit 2") {
  TempFile tree("eval.txt", "(and (or 1/2) (or 1/2 1/2))");
  TempFile bad("bad.dt", "(ask 0.0 0 1)");
  RunConfig config;
  config.command = RunConfig::Command::Evaluate;
  config.tree_path = tree.path;
  config.alg_path = bad.path;
  RunResult result = run_config(config);
  CHECK(result.code == 2);
  CHECK(result.err.find("invalid decision tree") != std::string::npos);
  CHECK(result.err.find("0.0=1") != std::string::npos);  // the defect path
}

TEST_CASE("evaluate prints cost and the three checks") {
  TempFile tree("eval2.txt", "(and (or 1/2) (or 1/2 1/2))");
  TempFile alg("good.dt", "(ask 0.0 0 (ask 1.0 (ask 1.1 0 1) 1))");
  RunConfig config;
  config.command = RunConfig::Command::Evaluate;
  config.tree_path = tree.path;
  config.alg_path = alg.path;
  RunResult result = run_config(config);
  CHECK(result.code == 0);
  CHECK(has_line(result.out, "cost: 7/4"));
  CHECK(has_line(result.out, "valid: yes"));
  CHECK(has_line(result.out, "directional: yes"));
  CHECK(has_line(result.out, "depth-first: yes"));
}

TEST_CASE("parse errors exit with code 2 and name the position") {
  TempFile tree("broken.txt", "(and (or 3/2))");
  RunConfig config;
  config.command = RunConfig::Command::Solve;
  config.tree_path = tree.path;
  RunResult result = run_config(config);
  CHECK(result.code == 2);
  CHECK(result.err.find("1:10") != std::string::npos);

  RunConfig missing;
  missing.command = RunConfig::Command::Solve;
  missing.tree_path = "/tmp/andor_does_not_exist.txt";
  CHECK(run_config(missing).code == 2);
}

TEST_CASE("verify reports zero failures and identical bytes across runs") {
  RunConfig config;
  config.command = RunConfig::Command::Verify;
  config.trials = 100;
  config.seed = 7;
  RunResult first = run_config(config);
  RunResult second = run_config(config);
  CHECK(first.code == 0);
  CHECK(has_line(first.out, "failures: 0"));
  CHECK(first.out == second.out);
}

TEST_CASE("oracle and gap-search emit machine-readable rationals") {
  TempFile tree("oracle.txt", "(and (or 1/2) (or 1/2 1/2))");
  RunConfig config;
  config.command = RunConfig::Command::Oracle;
  config.tree_path = tree.path;
  RunResult result = run_config(config);
  CHECK(result.code == 0);

  // every cost in a report re-parses as an exact rational and round-trips
  std::istringstream in(result.out);
  std::string line;
  int parsed = 0;
  while (std::getline(in, line)) {
    auto colon = line.find(": ");
    if (colon == std::string::npos) continue;
    if (line.substr(0, colon).find("cost") == std::string::npos) continue;
    std::string value = line.substr(colon + 2);
    Rational r = parse_rational(value);
    CHECK(to_string(r) == value);
    ++parsed;
  }
  CHECK(parsed >= 1);
}

TEST_CASE("gap-search reports are deterministic for a fixed config") {
  RunConfig config;
  config.command = RunConfig::Command::GapSearch;
  config.trials = 40;
  config.seed = 11;
  RunResult first = run_config(config);
  RunResult second = run_config(config);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("emitted strategies and witnesses are loadable files") {
  TempFile tree("emit.txt", "(and (or 1/2) (or 1/2 1/2))");
  RunConfig solve;
  solve.command = RunConfig::Command::Solve;
  solve.tree_path = tree.path;
  solve.emit_path = "/tmp/andor_test_emit.dt";
  CHECK(run_config(solve).code == 0);
  {
    std::ifstream in(solve.emit_path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text == "(ask 0.0 0 (ask 1.0 (ask 1.1 0 1) 1))\n");
  }
  std::remove(solve.emit_path.c_str());

  std::filesystem::path dir = "/tmp/andor_test_witnesses";
  std::filesystem::create_directories(dir);
  RunConfig gap;
  gap.command = RunConfig::Command::GapSearch;
  gap.trials = 60;
  gap.seed = 42;
  gap.emit_dir = dir.string();
  RunResult result = run_config(gap);
  CHECK(result.code == 0);
  REQUIRE(result.out.find("witness 1:") != std::string::npos);
  std::ifstream in(dir / "witness-001.txt");
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(result.out.find(text.substr(0, text.size() - 1)) != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("h3-demo runs without a tree file") {
  RunConfig config;
  config.command = RunConfig::Command::H3Demo;
  RunResult result = run_config(config);
  CHECK(result.code == 0);
  CHECK(has_line(result.out, "side-gate-zero-prob: 1/4"));
  CHECK(has_line(result.out, "root-never-resolved: yes"));
}

TEST_CASE("case-identity validates its probe argument") {
  TempFile tree("case.txt", "(and (or 1/2) (or 1/2 1/3) (or 1/4))");
  RunConfig config;
  config.command = RunConfig::Command::CaseIdentity;
  config.tree_path = tree.path;
  config.probe = "1.0";
  RunResult good = run_config(config);
  CHECK(good.code == 0);
  CHECK(has_line(good.out, "identity-holds: yes"));
  CHECK(has_line(good.out, "difference: 1/2"));

  config.probe = "0.0";
  CHECK(run_config(config).code == 2);
}
