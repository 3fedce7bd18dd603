#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "andor/experiments.hpp"

namespace andor {

// Every run is fully determined by this struct; no hidden environment
// state affects results.
struct RunConfig {
  enum class Command {
    Evaluate,
    Solve,
    Oracle,
    Verify,
    GapSearch,
    CaseIdentity,
    H3Demo,
  };

  Command command = Command::Solve;
  std::string tree_path;
  std::string alg_path;
  std::string emit_path;      // --emit-decision-tree / --emit-strategy
  std::string emit_dir;       // --emit-witness
  std::string probe;          // --probe i.j
  bool depth_first = false;   // oracle --depth-first
  uint64_t seed = kDefaultSeed;
  int trials = 1000;
  int max_leaves = 0;         // 0 = per-command default
  int max_branch = 4;
  int max_gate_leaves = 3;
  unsigned denom_bound = 16;

  static constexpr uint64_t kDefaultSeed = 1729;
};

// Exit codes: 0 success, 1 verification failure, 2 usage or input errors.
// Reports go to `out` and are byte-identical for identical configs; timing
// and diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Renderers behind the subcommands, reusable without touching the
// filesystem.
void render_solve(std::ostream& out, const Instance& instance);
void render_evaluate(std::ostream& out, const Instance& instance, const DecisionTree& alg);
void render_oracle(std::ostream& out, const Instance& instance, bool depth_first,
                   const OracleLimits& limits);
void render_verify(std::ostream& out, const VerifyReport& report);
void render_gap_search(std::ostream& out, const GapSearchReport& report);
void render_case_identity(std::ostream& out, const CaseScenario& scenario);
void render_h3_demo(std::ostream& out, const Height3DemoReport& report);

}  // namespace andor
