#include "andor/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "andor/cost_eval.hpp"
#include "andor/errors.hpp"
#include "andor/solver.hpp"

namespace andor {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << content;
}

std::string join_paths(const std::vector<Path>& paths) {
  std::string out;
  for (size_t i = 0; i < paths.size(); ++i) {
    if (i > 0) out += ',';
    out += format_path(paths[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

void render_solve(std::ostream& out, const Instance& instance) {
  SolvePlan plan = solve_plan(instance.shape, instance.dist);
  out << "tree: " << serialize_tree(instance.shape, instance.dist) << "\n";
  out << "gate-order: " << join_ints(plan.order) << "\n";
  for (int gate : plan.order) {
    const GateSummary& s = plan_summary(plan, gate);
    out << "gate " << gate << ": leaf-order=" << join_ints(s.leaf_order)
        << " p=" << to_string(s.zero_prob) << " c=" << to_string(s.cost)
        << " ratio=" << to_string(s.ratio) << "\n";
  }
  out << "cost: " << to_string(solve_strategy_cost(instance.shape, instance.dist)) << "\n";
}

void render_evaluate(std::ostream& out, const Instance& instance, const DecisionTree& alg) {
  out << "cost: " << to_string(expected_cost(alg, instance.shape, instance.dist)) << "\n";
  DirectionalityResult directional = is_directional(alg);
  out << "valid: yes\n";
  out << "directional: " << yes_no(directional.directional) << "\n";
  if (directional.directional) {
    out << "probe-order: " << join_paths(directional.order) << "\n";
  } else {
    out << "precedence-cycle: " << join_paths(directional.cycle) << "\n";
  }
  DepthFirstResult depth_first = is_depth_first(alg, instance.shape);
  out << "depth-first: " << yes_no(depth_first.depth_first) << "\n";
  if (!depth_first.depth_first) {
    out << "violation: probes " << format_path(depth_first.violating_probe) << " while "
        << format_path(depth_first.open_node) << " is open\n";
  }
}

void render_oracle(std::ostream& out, const Instance& instance, bool depth_first,
                   const OracleLimits& limits) {
  OracleResult result = depth_first
                            ? optimal_depth_first_cost(instance.shape, instance.dist, limits)
                            : optimal_cost(instance.shape, instance.dist, limits);
  out << (depth_first ? "depth-first-optimal-cost: " : "optimal-cost: ") << to_string(result.cost)
      << "\n";
  std::vector<Path> first_probes;
  if (!depth_first) {
    for (int leaf : all_optimal_first_probes(instance.shape, instance.dist, limits)) {
      first_probes.push_back(instance.shape.node(leaf).path);
    }
    out << "optimal-first-probes: " << join_paths(first_probes) << "\n";
  }
}

void render_verify(std::ostream& out, const VerifyReport& report) {
  out << "command: verify\n";
  out << "seed: " << report.options.seed << "\n";
  out << "trials: " << report.trials_run << "\n";
  out << "max-leaves: " << report.options.bounds.max_leaves << "\n";
  out << "max-branch: " << report.options.bounds.max_gates << "\n";
  out << "max-gate-leaves: " << report.options.bounds.max_gate_leaves << "\n";
  out << "denom-bound: " << report.options.bounds.denom_bound << "\n";
  out << "failures: " << report.failures.size() << "\n";
  for (const VerifyFailure& f : report.failures) {
    out << "failure at trial " << f.trial << ":\n";
    out << "  tree: " << f.tree_text << "\n";
    out << "  solver-cost: " << to_string(f.solver_cost) << "\n";
    out << "  optimal-cost: " << to_string(f.optimal) << "\n";
    out << "  depth-first-optimal-cost: " << to_string(f.optimal_depth_first) << "\n";
  }
  out << "total-cost: " << to_string(report.total_cost) << "\n";
  out << "result: " << (report.failures.empty() ? "ok" : "violations found") << "\n";
}

void render_gap_search(std::ostream& out, const GapSearchReport& report) {
  out << "command: gap-search\n";
  out << "seed: " << report.options.seed << "\n";
  out << "trials: " << report.trials_run << "\n";
  out << "denom-bound: " << report.options.denom_bound << "\n";
  out << "witnesses: " << report.witnesses.size() << "\n";
  int index = 0;
  for (const GapWitness& w : report.witnesses) {
    ++index;
    out << "witness " << index << ":\n";
    out << "  trial: " << w.trial << "\n";
    out << "  tree: " << w.tree_text << "\n";
    out << "  optimal-cost: " << to_string(w.optimal) << "\n";
    out << "  depth-first-cost: " << to_string(w.depth_first) << "\n";
    out << "  gap: " << to_string(w.gap) << "\n";
    out << "  optimal-first-probes: " << join_paths(w.optimal_first_probes) << "\n";
    out << "  optimum-depth-first: " << yes_no(!w.optimum_not_depth_first) << "\n";
    out << "  first-probes-force-gap: " << yes_no(w.first_probes_confirmed) << "\n";
  }
}

void render_case_identity(std::ostream& out, const CaseScenario& scenario) {
  const TreeShape& shape = scenario.instance.shape;
  auto leaf_paths = [&](const std::vector<int>& leaves) {
    std::vector<Path> paths;
    for (int id : leaves) paths.push_back(shape.node(id).path);
    return join_paths(paths);
  };

  out << "command: case-identity\n";
  out << "tree: " << serialize_tree(shape, scenario.instance.dist) << "\n";
  out << "probe: " << format_path(shape.node(scenario.probe_leaf).path) << "\n";
  out << "prefix: " << leaf_paths(scenario.prefix_leaves) << "\n";
  out << "remainder: " << leaf_paths(scenario.remainder_leaves) << "\n";
  out << "suffix: " << leaf_paths(scenario.suffix_leaves) << "\n";
  out << "prefix-pass-prob: " << to_string(scenario.prefix_pass_prob) << "\n";
  out << "remainder-pass-prob: " << to_string(scenario.remainder_pass_prob) << "\n";
  out << "prefix-cost: " << to_string(scenario.prefix_cost) << "\n";
  out << "remainder-cost: " << to_string(scenario.remainder_cost) << "\n";
  out << "suffix-cost: " << to_string(scenario.suffix_cost) << "\n";

  CaseCosts costs = case_cost_identity(scenario);
  out << "probe-first-cost: " << to_string(costs.probe_first_eval) << "\n";
  out << "probe-first-closed-form: " << to_string(costs.probe_first_closed) << "\n";
  out << "deferred-cost: " << to_string(costs.deferred_eval) << "\n";
  out << "deferred-closed-form: " << to_string(costs.deferred_closed) << "\n";
  out << "difference: " << to_string(costs.difference) << "\n";
  out << "one-minus-prefix-pass: " << to_string(costs.one_minus_prefix_pass) << "\n";
  out << "identity-holds: " << yes_no(costs.consistent) << "\n";
}

void render_h3_demo(std::ostream& out, const Height3DemoReport& report) {
  out << "command: h3-demo\n";
  out << "side-gate: " << format_path(report.side_gate) << "\n";
  out << "probed: " << format_path(report.probed[0]) << "," << format_path(report.probed[1])
      << "\n";
  out << "side-gate-zero-prob: " << to_string(report.side_gate_zero_prob) << "\n";
  for (int v0 = 0; v0 < 2; ++v0) {
    for (int v1 = 0; v1 < 2; ++v1) {
      out << "outcome " << v0 << v1 << ": root "
          << (report.root_resolved_by_outcome[static_cast<size_t>(v0 * 2 + v1)] ? "resolved"
                                                                                : "unresolved")
          << "\n";
    }
  }
  out << "root-never-resolved: " << yes_no(report.root_never_resolved) << "\n";
}

namespace {

Instance load_instance(const std::string& path) { return parse_tree(read_file(path)); }

int run_impl(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case RunConfig::Command::Evaluate: {
      Instance instance = load_instance(config.tree_path);
      DecisionTree alg = parse_decision_tree(read_file(config.alg_path));
      ValidationResult validation = validate(alg, instance.shape);
      if (!validation.ok) {
        err << "invalid decision tree: " << validation.issue->message << "\n";
        if (!validation.issue->trace.empty()) {
          err << "after probes:";
          for (const auto& [path, value] : validation.issue->trace) {
            err << ' ' << format_path(path) << '=' << (value ? '1' : '0');
          }
          err << "\n";
        }
        return 2;
      }
      render_evaluate(out, instance, alg);
      return 0;
    }
    case RunConfig::Command::Solve: {
      Instance instance = load_instance(config.tree_path);
      render_solve(out, instance);
      if (!config.emit_path.empty()) {
        write_file(config.emit_path,
                   serialize_decision_tree(solve_strategy(instance.shape, instance.dist)) + "\n");
      }
      return 0;
    }
    case RunConfig::Command::Oracle: {
      Instance instance = load_instance(config.tree_path);
      OracleLimits limits;
      if (config.max_leaves > 0) limits.max_leaves = config.max_leaves;
      render_oracle(out, instance, config.depth_first, limits);
      if (!config.emit_path.empty()) {
        OracleResult result =
            config.depth_first ? optimal_depth_first_cost(instance.shape, instance.dist, limits)
                               : optimal_cost(instance.shape, instance.dist, limits);
        write_file(config.emit_path, serialize_decision_tree(result.strategy) + "\n");
      }
      return 0;
    }
    case RunConfig::Command::Verify: {
      VerifyOptions options;
      options.trials = config.trials;
      options.seed = config.seed;
      options.bounds.max_gates = config.max_branch;
      options.bounds.max_gate_leaves = config.max_gate_leaves;
      if (config.max_leaves > 0) options.bounds.max_leaves = config.max_leaves;
      options.bounds.denom_bound = config.denom_bound;
      VerifyReport report = verify_theorem(options);
      render_verify(out, report);
      return report.failures.empty() ? 0 : 1;
    }
    case RunConfig::Command::GapSearch: {
      GapSearchOptions options;
      options.trials = config.trials;
      options.seed = config.seed;
      options.denom_bound = config.denom_bound;
      GapSearchReport report = gap_search(options);
      render_gap_search(out, report);
      if (!config.emit_dir.empty()) {
        int index = 0;
        for (const GapWitness& w : report.witnesses) {
          ++index;
          std::ostringstream name;
          name << config.emit_dir << "/witness-" << std::setfill('0') << std::setw(3) << index
               << ".txt";
          write_file(name.str(), w.tree_text + "\n");
        }
      }
      return 0;
    }
    case RunConfig::Command::CaseIdentity: {
      Instance instance = load_instance(config.tree_path);
      CaseScenario scenario = make_case_scenario(instance, parse_path(config.probe));
      render_case_identity(out, scenario);
      return case_cost_identity(scenario).consistent ? 0 : 1;
    }
    case RunConfig::Command::H3Demo: {
      Instance instance =
          config.tree_path.empty() ? default_height3_instance() : load_instance(config.tree_path);
      Height3DemoReport report = height3_priority_demo(instance);
      render_h3_demo(out, report);
      return report.root_never_resolved ? 0 : 1;
    }
  }
  err << "unknown command\n";
  return 2;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  int code;
  try {
    code = run_impl(config, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const StructureError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  // Timing goes to stderr so reports stay byte-identical run to run.
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  err << "elapsed-seconds: " << std::fixed << std::setprecision(3) << elapsed.count() << "\n";
  return code;
}

}  // namespace andor
