#include <CLI11.hpp>
#include <iostream>

#include "andor/cli.hpp"

int main(int argc, char** argv) {
  using andor::RunConfig;

  CLI::App app{"Exact analysis of querying strategies on AND-OR trees under independent leaf "
               "distributions"};
  app.require_subcommand(1);
  RunConfig config;

  auto* evaluate = app.add_subcommand(
      "evaluate", "Evaluate a decision tree: exact cost, validity, directionality, depth-first");
  evaluate->add_option("--tree", config.tree_path, "tree file")->required();
  evaluate->add_option("--alg", config.alg_path, "decision-tree file")->required();

  auto* solve = app.add_subcommand(
      "solve", "Build the optimal depth-first directional strategy for a height-2 tree");
  solve->add_option("--tree", config.tree_path, "tree file")->required();
  solve->add_option("--emit-decision-tree", config.emit_path, "write the strategy here");

  auto* oracle = app.add_subcommand(
      "oracle", "Brute-force the exact optimal expected cost for a tree of any height");
  oracle->add_option("--tree", config.tree_path, "tree file")->required();
  oracle->add_flag("--depth-first", config.depth_first, "restrict to depth-first algorithms");
  oracle->add_option("--emit-strategy", config.emit_path, "write an optimal strategy here");
  oracle->add_option("--max-leaves", config.max_leaves, "instance size bound (default 12)");

  auto* verify = app.add_subcommand(
      "verify", "Check solver = unrestricted optimum = depth-first optimum on random instances");
  verify->add_option("--trials", config.trials, "number of random instances")->required();
  verify->add_option("--seed", config.seed, "random seed (default 1729)");
  verify->add_option("--max-leaves", config.max_leaves, "max leaves per instance (default 10)");
  verify->add_option("--max-branch", config.max_branch, "max gates under the root (default 4)");
  verify->add_option("--max-gate-leaves", config.max_gate_leaves,
                     "max leaves per gate (default 3)");
  verify->add_option("--denom", config.denom_bound, "denominator bound (default 16)");

  auto* gap = app.add_subcommand(
      "gap-search", "Search the height-3 shape for distributions where depth-first loses");
  gap->add_option("--trials", config.trials, "number of random distributions")->required();
  gap->add_option("--seed", config.seed, "random seed (default 1729)");
  gap->add_option("--denom", config.denom_bound, "denominator bound (default 16)");
  gap->add_option("--emit-witness", config.emit_dir, "write witness trees into this directory");

  auto* case_identity = app.add_subcommand(
      "case-identity", "Check the probe-deferral cost identity for a given first probe");
  case_identity->add_option("--tree", config.tree_path, "tree file")->required();
  case_identity->add_option("--probe", config.probe, "leaf path i.j to probe first")->required();

  auto* h3 = app.add_subcommand(
      "h3-demo", "Show why the deferral argument breaks on the height-3 shape");
  h3->add_option("--tree", config.tree_path, "height-3 tree file (default: all leaves 1/2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (evaluate->parsed()) config.command = RunConfig::Command::Evaluate;
  if (solve->parsed()) config.command = RunConfig::Command::Solve;
  if (oracle->parsed()) config.command = RunConfig::Command::Oracle;
  if (verify->parsed()) config.command = RunConfig::Command::Verify;
  if (gap->parsed()) config.command = RunConfig::Command::GapSearch;
  if (case_identity->parsed()) config.command = RunConfig::Command::CaseIdentity;
  if (h3->parsed()) config.command = RunConfig::Command::H3Demo;

  return andor::run(config, std::cout, std::cerr);
}
