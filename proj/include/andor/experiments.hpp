#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "andor/decision_tree.hpp"
#include "andor/oracle.hpp"
#include "andor/tree.hpp"

namespace andor {

// Deterministic random source (splitmix64). Same seed, same sequence, on
// every platform: bounded draws use rejection sampling instead of the
// implementation-defined standard distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  uint64_t below(uint64_t bound);  // uniform in [0, bound)

 private:
  uint64_t state_;
};

struct InstanceBounds {
  int max_gates = 4;        // bound on the root's arity
  int max_gate_leaves = 3;  // bound on each gate's arity
  int max_leaves = 10;      // resample until the total fits
  unsigned denom_bound = 16;
};

// p = a/b with b in [2, denom_bound] and a in [1, b-1]; always admissible.
Rational random_probability(Rng& rng, unsigned denom_bound);

IndependentDistribution random_distribution(Rng& rng, const TreeShape& shape,
                                            unsigned denom_bound);

// A random AND-rooted height-<=2 instance with admissible probabilities.
Instance random_height2_instance(Rng& rng, const InstanceBounds& bounds);

// A complete alternating tree: `arity` children per internal node, all
// leaves at depth `height`. Probabilities are given in document order.
Instance complete_instance(Gate root_kind, int height, int arity,
                           const std::vector<Rational>& leaf_probs);

// The complete binary OR-AND tree of height 3 (8 leaves), the smallest
// shape on which depth-first search is known to lose to unrestricted
// search under some admissible distribution.
Instance binary_or_and_height3(const std::vector<Rational>& leaf_probs);

// ---------------------------------------------------------------------------
// Probe-deferral scenario.
//
// On an AND-rooted height-2 instance, fix a first probe x_{i,j} inside a
// gate with at least two leaves. Removing that leaf (or its whole gate) and
// running the priority solver on the rest splits the remaining search into
//   prefix    - the gates ordered before gate i's remainder,
//   remainder - gate i's surviving leaves, and
//   suffix    - the gates ordered after.
// Probing x_{i,j} first and then searching prefix/remainder/suffix costs
// exactly 1 - prefix_pass_prob more than deferring the probe until after
// the prefix, which is why an optimal algorithm never begins inside a
// multi-leaf gate that the priority order does not rank first.
// ---------------------------------------------------------------------------
struct CaseScenario {
  Instance instance;
  int probe_leaf = -1;               // node id of x_{i,j}
  int probe_gate = -1;               // root-child position i
  std::vector<int> prefix_leaves;    // leaf node ids in probe order
  std::vector<int> remainder_leaves;
  std::vector<int> suffix_leaves;
  std::vector<int> prefix_gates;     // root-child positions in probe order
  std::vector<int> suffix_gates;
  Rational prefix_pass_prob;     // prob(no prefix gate evaluates to 0)
  Rational remainder_pass_prob;  // prob(not all remainder leaves are 0)
  Rational prefix_cost;          // expected probes spent inside the prefix
  Rational remainder_cost;
  Rational suffix_cost;
};

// Derives the scenario for a given probe leaf. Throws DomainError when the
// probe's gate has fewer than two leaves or when the derived prefix or
// suffix is empty (the identity is only asserted in their presence).
CaseScenario make_case_scenario(const Instance& instance, const Path& probe);

// Builds the two algorithms the scenario compares: `probe_first` queries
// x_{i,j} immediately, `deferred` runs the prefix first. Both are valid
// depth-first directional decision trees on the full instance.
struct CaseAlgorithms {
  DecisionTree probe_first;
  DecisionTree deferred;
};
CaseAlgorithms build_case_algorithms(const CaseScenario& scenario);

// Costs of both algorithms computed two ways each: by decision-tree
// evaluation and by the closed forms. All four must agree pairwise and the
// difference must equal 1 - prefix_pass_prob exactly.
struct CaseCosts {
  Rational probe_first_eval;
  Rational probe_first_closed;
  Rational deferred_eval;
  Rational deferred_closed;
  Rational difference;          // probe_first - deferred
  Rational one_minus_prefix_pass;
  bool consistent = false;
};
CaseCosts case_cost_identity(const CaseScenario& scenario);

// Draws a random admissible height-2 instance and probe leaf until the
// scenario preconditions hold.
CaseScenario random_case_scenario(Rng& rng, const InstanceBounds& bounds);

// ---------------------------------------------------------------------------
// Randomized equivalence check: on random admissible height-<=2 instances
// the priority strategy's closed-form cost, the unconstrained optimum and
// the depth-first optimum must coincide exactly.
// ---------------------------------------------------------------------------
struct VerifyOptions {
  int trials = 1000;
  uint64_t seed = 0;
  InstanceBounds bounds;
};

struct VerifyFailure {
  int trial = 0;
  std::string tree_text;
  Rational solver_cost;
  Rational optimal;
  Rational optimal_depth_first;
};

struct VerifyReport {
  VerifyOptions options;
  int trials_run = 0;
  std::vector<VerifyFailure> failures;
  Rational total_cost;  // sum of the optimal costs, a determinism witness
};

VerifyReport verify_theorem(const VerifyOptions& options);

// ---------------------------------------------------------------------------
// Depth-first gap search on the height-3 shape.
// ---------------------------------------------------------------------------
struct GapSearchOptions {
  int trials = 1000;
  uint64_t seed = 0;
  unsigned denom_bound = 16;
  int stop_after = 0;  // stop once this many witnesses are found; 0 = never
};

struct GapWitness {
  int trial = 0;
  std::string tree_text;
  Rational optimal;
  Rational depth_first;
  Rational gap;
  std::vector<Path> optimal_first_probes;
  bool optimum_not_depth_first = false;   // extracted optimum fails is_depth_first
  bool first_probes_confirmed = false;    // every optimal first probe forces a
                                          // depth-first cost above the optimum
};

struct GapSearchReport {
  GapSearchOptions options;
  int trials_run = 0;
  std::vector<GapWitness> witnesses;
};

GapSearchReport gap_search(const GapSearchOptions& options);

// ---------------------------------------------------------------------------
// Height-3 obstruction demo: on the complete binary OR-AND tree of height 3,
// probing both leaves of one depth-2 gate can never determine the root, even
// though the event "that gate evaluates to 0" has positive probability. The
// deferral identity above hinges on those two coinciding, which is exactly
// what breaks beyond height 2.
// ---------------------------------------------------------------------------
struct Height3DemoReport {
  Path side_gate;                   // the probed depth-2 gate
  std::array<Path, 2> probed;       // its two leaves
  Rational side_gate_zero_prob;     // positive for admissible distributions
  std::array<bool, 4> root_resolved_by_outcome;  // per (v0, v1) outcome
  bool root_never_resolved = false;
};

// Requires the complete binary OR-AND height-3 shape with an admissible
// distribution; throws DomainError otherwise.
Height3DemoReport height3_priority_demo(const Instance& instance);

Instance default_height3_instance();  // the height-3 shape, all leaves 1/2

}  // namespace andor
