#include "andor/experiments.hpp"

#include <algorithm>
#include <utility>

#include "andor/cost_eval.hpp"
#include "andor/errors.hpp"
#include "andor/knowledge.hpp"
#include "andor/solver.hpp"

namespace andor {

uint64_t Rng::next() {
  // splitmix64
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below(0)");
  uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
  uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return draw % bound;
}

Rational random_probability(Rng& rng, unsigned denom_bound) {
  if (denom_bound < 2) throw DomainError("denominator bound must be at least 2");
  uint64_t den = 2 + rng.below(denom_bound - 1);
  uint64_t num = 1 + rng.below(den - 1);
  return make_rational(Integer(num), Integer(den));
}

IndependentDistribution random_distribution(Rng& rng, const TreeShape& shape,
                                            unsigned denom_bound) {
  std::vector<Rational> probs;
  probs.reserve(static_cast<size_t>(shape.leaf_count()));
  for (int i = 0; i < shape.leaf_count(); ++i) {
    probs.push_back(random_probability(rng, denom_bound));
  }
  return IndependentDistribution(std::move(probs));
}

Instance random_height2_instance(Rng& rng, const InstanceBounds& bounds) {
  if (bounds.max_gates < 1 || bounds.max_gate_leaves < 1 || bounds.max_leaves < 1) {
    throw DomainError("instance bounds must be positive");
  }
  while (true) {
    int gates = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(bounds.max_gates)));
    std::vector<int> arity(static_cast<size_t>(gates));
    int total = 0;
    for (int& a : arity) {
      a = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(bounds.max_gate_leaves)));
      total += a;
    }
    if (total > bounds.max_leaves) continue;

    std::vector<NodeSpec> children;
    children.reserve(static_cast<size_t>(gates));
    for (int a : arity) {
      std::vector<NodeSpec> leaves;
      leaves.reserve(static_cast<size_t>(a));
      for (int j = 0; j < a; ++j) {
        leaves.push_back(NodeSpec::leaf(random_probability(rng, bounds.denom_bound)));
      }
      children.push_back(NodeSpec::gate(Gate::Or, std::move(leaves)));
    }
    return build_instance(NodeSpec::gate(Gate::And, std::move(children)));
  }
}

namespace {

NodeSpec complete_spec(Gate kind, int height, int arity, const std::vector<Rational>& probs,
                       size_t& next_leaf) {
  std::vector<NodeSpec> children;
  children.reserve(static_cast<size_t>(arity));
  for (int i = 0; i < arity; ++i) {
    if (height == 1) {
      children.push_back(NodeSpec::leaf(probs.at(next_leaf++)));
    } else {
      children.push_back(complete_spec(dual(kind), height - 1, arity, probs, next_leaf));
    }
  }
  return NodeSpec::gate(kind, std::move(children));
}

}  // namespace

Instance complete_instance(Gate root_kind, int height, int arity,
                           const std::vector<Rational>& leaf_probs) {
  if (height < 1 || arity < 1) throw DomainError("height and arity must be positive");
  size_t expected = 1;
  for (int i = 0; i < height; ++i) expected *= static_cast<size_t>(arity);
  if (leaf_probs.size() != expected) {
    throw DomainError("expected " + std::to_string(expected) + " leaf probabilities, got " +
                      std::to_string(leaf_probs.size()));
  }
  size_t next_leaf = 0;
  return build_instance(complete_spec(root_kind, height, arity, leaf_probs, next_leaf));
}

Instance binary_or_and_height3(const std::vector<Rational>& leaf_probs) {
  return complete_instance(Gate::Or, 3, 2, leaf_probs);
}

// --------------------------------------------------------------------------
// Probe-deferral scenarios
// --------------------------------------------------------------------------

namespace {

// Expected probes of running the gates in order until one evaluates to 0
// (which settles the AND root) or all pass.
Rational gate_chain_cost(const SolvePlan& plan, const std::vector<int>& gates) {
  Rational total = 0;
  Rational reach = 1;
  for (int gate : gates) {
    const GateSummary& s = plan_summary(plan, gate);
    total += reach * s.cost;
    reach *= Rational(1) - s.zero_prob;
  }
  return total;
}

Rational gate_pass_prob(const SolvePlan& plan, const std::vector<int>& gates) {
  Rational pass = 1;
  for (int gate : gates) {
    pass *= Rational(1) - plan_summary(plan, gate).zero_prob;
  }
  return pass;
}

std::vector<int> segment_leaves(const TreeShape& shape, const GateSummary& summary) {
  const TreeShape::Node& root = shape.node(shape.root());
  const TreeShape::Node& gate = shape.node(root.children.at(static_cast<size_t>(summary.gate)));
  std::vector<int> leaves;
  leaves.reserve(summary.leaf_order.size());
  for (int j : summary.leaf_order) {
    leaves.push_back(gate.children.at(static_cast<size_t>(j)));
  }
  return leaves;
}

}  // namespace

CaseScenario make_case_scenario(const Instance& instance, const Path& probe) {
  const TreeShape& shape = instance.shape;
  const IndependentDistribution& dist = instance.dist;
  if (!dist.admissible()) {
    throw DomainError("the scenario requires an admissible distribution");
  }

  int probe_id = shape.require_leaf(probe);
  if (probe.size() != 2) {
    throw DomainError("the probe must be a height-2 leaf 'i.j'");
  }
  int gate_pos = probe.front();
  const TreeShape::Node& gate = shape.node(shape.node(probe_id).parent);
  if (gate.children.size() < 2) {
    throw DomainError("the probed gate has a single leaf; the deferral argument needs at least two");
  }

  // The split is read off the strategy for the instance without the probed
  // leaf: the gates ranked before the probed gate's remainder form the
  // prefix, those after form the suffix.
  SolvePlan plan = restricted_solve_plan(shape, dist, {probe});

  CaseScenario scenario;
  scenario.instance = instance;
  scenario.probe_leaf = probe_id;
  scenario.probe_gate = gate_pos;

  bool seen_probe_gate = false;
  for (int g : plan.order) {
    if (g == gate_pos) {
      seen_probe_gate = true;
      continue;
    }
    (seen_probe_gate ? scenario.suffix_gates : scenario.prefix_gates).push_back(g);
  }
  if (scenario.prefix_gates.empty() || scenario.suffix_gates.empty()) {
    throw DomainError("the probed gate is ranked first or last; prefix and suffix must be nonempty");
  }

  for (int g : scenario.prefix_gates) {
    for (int leaf : segment_leaves(shape, plan_summary(plan, g))) {
      scenario.prefix_leaves.push_back(leaf);
    }
  }
  scenario.remainder_leaves = segment_leaves(shape, plan_summary(plan, gate_pos));
  for (int g : scenario.suffix_gates) {
    for (int leaf : segment_leaves(shape, plan_summary(plan, g))) {
      scenario.suffix_leaves.push_back(leaf);
    }
  }

  scenario.prefix_pass_prob = gate_pass_prob(plan, scenario.prefix_gates);
  Rational remainder_zero = 1;
  for (int leaf : scenario.remainder_leaves) {
    remainder_zero *= dist.p_zero(shape.node(leaf).leaf_index);
  }
  scenario.remainder_pass_prob = Rational(1) - remainder_zero;
  scenario.prefix_cost = gate_chain_cost(plan, scenario.prefix_gates);
  scenario.remainder_cost = plan_summary(plan, gate_pos).cost;
  scenario.suffix_cost = gate_chain_cost(plan, scenario.suffix_gates);
  return scenario;
}

CaseAlgorithms build_case_algorithms(const CaseScenario& scenario) {
  const TreeShape& shape = scenario.instance.shape;

  auto segments_of = [&](const std::vector<int>& gates, const SolvePlan& plan) {
    std::vector<std::vector<int>> segments;
    for (int g : gates) segments.push_back(segment_leaves(shape, plan_summary(plan, g)));
    return segments;
  };

  SolvePlan plan = restricted_solve_plan(shape, scenario.instance.dist,
                                         {shape.node(scenario.probe_leaf).path});

  std::vector<std::vector<int>> prefix = segments_of(scenario.prefix_gates, plan);
  std::vector<std::vector<int>> suffix = segments_of(scenario.suffix_gates, plan);

  // Probe first: query x_{i,j}; on 0 search prefix, remainder, suffix; on 1
  // the probed gate is settled, search prefix and suffix.
  std::vector<std::vector<int>> on_zero_segments = prefix;
  on_zero_segments.push_back(scenario.remainder_leaves);
  for (const auto& s : suffix) on_zero_segments.push_back(s);
  std::vector<std::vector<int>> on_one_segments = prefix;
  for (const auto& s : suffix) on_one_segments.push_back(s);

  DecisionTree probe_first = DecisionTree::query(
      shape.node(scenario.probe_leaf).path,
      segment_chain_strategy(shape, on_zero_segments),
      segment_chain_strategy(shape, on_one_segments));

  // Deferred: search the prefix; then the probed gate with x_{i,j} leading
  // its remainder; then the suffix.
  std::vector<std::vector<int>> deferred_segments = prefix;
  std::vector<int> probed_gate_leaves;
  probed_gate_leaves.push_back(scenario.probe_leaf);
  for (int leaf : scenario.remainder_leaves) probed_gate_leaves.push_back(leaf);
  deferred_segments.push_back(std::move(probed_gate_leaves));
  for (const auto& s : suffix) deferred_segments.push_back(s);

  DecisionTree deferred = segment_chain_strategy(shape, deferred_segments);
  return CaseAlgorithms{std::move(probe_first), std::move(deferred)};
}

CaseCosts case_cost_identity(const CaseScenario& scenario) {
  const TreeShape& shape = scenario.instance.shape;
  const IndependentDistribution& dist = scenario.instance.dist;
  CaseAlgorithms algs = build_case_algorithms(scenario);

  CaseCosts costs;
  costs.probe_first_eval = expected_cost(algs.probe_first, shape, dist);
  costs.deferred_eval = expected_cost(algs.deferred, shape, dist);

  const Rational& p = dist.p_zero(shape.node(scenario.probe_leaf).leaf_index);
  const Rational& pass_prefix = scenario.prefix_pass_prob;
  const Rational& pass_rem = scenario.remainder_pass_prob;
  const Rational& c_prefix = scenario.prefix_cost;
  const Rational& c_rem = scenario.remainder_cost;
  const Rational& c_suffix = scenario.suffix_cost;

  costs.probe_first_closed = 1 + c_prefix + p * pass_prefix * (c_rem + pass_rem * c_suffix) +
                             (1 - p) * pass_prefix * c_suffix;
  costs.deferred_closed = c_prefix + pass_prefix + pass_prefix * p * (c_rem + pass_rem * c_suffix) +
                          pass_prefix * (1 - p) * c_suffix;
  costs.difference = costs.probe_first_eval - costs.deferred_eval;
  costs.one_minus_prefix_pass = Rational(1) - pass_prefix;
  costs.consistent = costs.probe_first_eval == costs.probe_first_closed &&
                     costs.deferred_eval == costs.deferred_closed &&
                     costs.difference == costs.one_minus_prefix_pass &&
                     costs.one_minus_prefix_pass > 0;
  return costs;
}

CaseScenario random_case_scenario(Rng& rng, const InstanceBounds& bounds) {
  if (bounds.max_gates < 3) {
    throw DomainError("scenarios need at least three gates; raise max_gates");
  }
  if (bounds.max_gate_leaves < 2) {
    throw DomainError("scenarios need a gate with two leaves; raise max_gate_leaves");
  }
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Instance instance = random_height2_instance(rng, bounds);
    const TreeShape::Node& root = instance.shape.node(instance.shape.root());
    if (root.children.size() < 3) continue;

    // Candidate probes: any leaf of a gate with at least two leaves.
    std::vector<Path> candidates;
    for (int gate_id : root.children) {
      const TreeShape::Node& gate = instance.shape.node(gate_id);
      if (gate.children.size() < 2) continue;
      for (int leaf : gate.children) candidates.push_back(instance.shape.node(leaf).path);
    }
    if (candidates.empty()) continue;
    const Path& probe = candidates[rng.below(candidates.size())];
    try {
      return make_case_scenario(instance, probe);
    } catch (const DomainError&) {
      continue;  // prefix or suffix came out empty; redraw
    }
  }
  throw DomainError("failed to draw a scenario within the attempt budget");
}

// --------------------------------------------------------------------------
// Randomized equivalence check
// --------------------------------------------------------------------------

VerifyReport verify_theorem(const VerifyOptions& options) {
  Rng rng(options.seed);
  VerifyReport report;
  report.options = options;
  report.total_cost = 0;

  OracleLimits limits{std::max(options.bounds.max_leaves, 1)};
  for (int trial = 0; trial < options.trials; ++trial) {
    Instance instance = random_height2_instance(rng, options.bounds);
    Rational solver = solve_strategy_cost(instance.shape, instance.dist);
    OracleResult best = optimal_cost(instance.shape, instance.dist, limits);
    OracleResult best_df = optimal_depth_first_cost(instance.shape, instance.dist, limits);
    report.total_cost += best.cost;
    if (solver != best.cost || best.cost != best_df.cost) {
      VerifyFailure failure;
      failure.trial = trial;
      failure.tree_text = serialize_tree(instance.shape, instance.dist);
      failure.solver_cost = solver;
      failure.optimal = best.cost;
      failure.optimal_depth_first = best_df.cost;
      report.failures.push_back(std::move(failure));
    }
    ++report.trials_run;
  }
  return report;
}

// --------------------------------------------------------------------------
// Depth-first gap search on the height-3 shape
// --------------------------------------------------------------------------

GapSearchReport gap_search(const GapSearchOptions& options) {
  Rng rng(options.seed);
  GapSearchReport report;
  report.options = options;

  Instance shape_holder = default_height3_instance();
  const TreeShape& shape = shape_holder.shape;
  OracleLimits limits{shape.leaf_count()};

  for (int trial = 0; trial < options.trials; ++trial) {
    IndependentDistribution dist = random_distribution(rng, shape, options.denom_bound);
    ++report.trials_run;

    OracleResult best = optimal_cost(shape, dist, limits);
    OracleResult best_df = optimal_depth_first_cost(shape, dist, limits);
    if (best.cost == best_df.cost) continue;

    GapWitness witness;
    witness.trial = trial;
    witness.tree_text = serialize_tree(shape, dist);
    witness.optimal = best.cost;
    witness.depth_first = best_df.cost;
    witness.gap = best_df.cost - best.cost;
    witness.optimum_not_depth_first = !is_depth_first(best.strategy, shape).depth_first;

    witness.first_probes_confirmed = true;
    for (int leaf : all_optimal_first_probes(shape, dist, limits)) {
      witness.optimal_first_probes.push_back(shape.node(leaf).path);
      if (depth_first_cost_with_first_probe(shape, dist, leaf, limits) <= best.cost) {
        witness.first_probes_confirmed = false;
      }
    }
    report.witnesses.push_back(std::move(witness));
    if (options.stop_after > 0 &&
        static_cast<int>(report.witnesses.size()) >= options.stop_after) {
      break;
    }
  }
  return report;
}

// --------------------------------------------------------------------------
// Height-3 obstruction demo
// --------------------------------------------------------------------------

Instance default_height3_instance() {
  return binary_or_and_height3(std::vector<Rational>(8, Rational(1, 2)));
}

Height3DemoReport height3_priority_demo(const Instance& instance) {
  const TreeShape& shape = instance.shape;
  bool right_shape = shape.height() == 3 && shape.leaf_count() == 8 &&
                     !shape.node(shape.root()).leaf &&
                     shape.node(shape.root()).gate == Gate::Or &&
                     shape.node(shape.root()).children.size() == 2;
  if (right_shape) {
    for (int id = 0; id < shape.node_count(); ++id) {
      const TreeShape::Node& node = shape.node(id);
      if (node.leaf ? node.depth != 3 : node.children.size() != 2) {
        right_shape = false;
        break;
      }
    }
  }
  if (!right_shape) {
    throw DomainError("the demo requires the complete binary OR-AND tree of height 3");
  }
  if (!instance.dist.admissible()) {
    throw DomainError("the demo requires an admissible distribution");
  }

  Height3DemoReport report;
  report.side_gate = Path{1, 0};
  report.probed = {Path{1, 0, 0}, Path{1, 0, 1}};
  int leaf0 = shape.require_leaf(report.probed[0]);
  int leaf1 = shape.require_leaf(report.probed[1]);
  report.side_gate_zero_prob = instance.dist.p_zero(shape.node(leaf0).leaf_index) *
                               instance.dist.p_zero(shape.node(leaf1).leaf_index);

  report.root_never_resolved = true;
  KnowledgeState empty(shape);
  for (int v0 = 0; v0 < 2; ++v0) {
    for (int v1 = 0; v1 < 2; ++v1) {
      KnowledgeState state =
          empty.with_leaf_index(shape.node(leaf0).leaf_index, v0 == 1)
               .with_leaf_index(shape.node(leaf1).leaf_index, v1 == 1);
      bool resolved = resolve(shape, state)[static_cast<size_t>(shape.root())] != -1;
      report.root_resolved_by_outcome[static_cast<size_t>(v0 * 2 + v1)] = resolved;
      if (resolved) report.root_never_resolved = false;
    }
  }
  return report;
}

}  // namespace andor
