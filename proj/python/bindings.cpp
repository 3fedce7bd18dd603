#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "andor/cli.hpp"
#include "andor/cost_eval.hpp"
#include "andor/errors.hpp"
#include "andor/experiments.hpp"
#include "andor/oracle.hpp"
#include "andor/solver.hpp"

namespace py = pybind11;
using namespace andor;

namespace {

// Rationals cross the boundary as exact "a/b" strings; fractions.Fraction
// parses them directly.
std::string cost_str(const Rational& r) { return to_string(r); }

std::vector<std::string> path_strings(const TreeShape& shape, const std::vector<int>& node_ids) {
  std::vector<std::string> out;
  out.reserve(node_ids.size());
  for (int id : node_ids) out.push_back(format_path(shape.node(id).path));
  return out;
}

py::dict plan_dict(const SolvePlan& plan) {
  py::dict out;
  py::list order;
  for (int gate : plan.order) order.append(gate);
  out["gate_order"] = order;
  py::dict gates;
  for (const GateSummary& s : plan.gates) {
    py::dict entry;
    py::list leaf_order;
    for (int j : s.leaf_order) leaf_order.append(j);
    entry["leaf_order"] = leaf_order;
    entry["zero_prob"] = cost_str(s.zero_prob);
    entry["cost"] = cost_str(s.cost);
    entry["ratio"] = cost_str(s.ratio);
    gates[py::int_(s.gate)] = entry;
  }
  out["gates"] = gates;
  return out;
}

OracleLimits limits_of(int max_leaves) {
  OracleLimits limits;
  if (max_leaves > 0) limits.max_leaves = max_leaves;
  return limits;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact expected-cost analysis of querying strategies on AND-OR trees";

  py::register_exception<ParseError>(m, "TreeParseError", PyExc_ValueError);
  py::register_exception<StructureError>(m, "TreeStructureError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "TreeDomainError", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](const std::string& text) { return parse_tree(text); }), py::arg("text"))
      .def("serialize",
           [](const Instance& inst) { return serialize_tree(inst.shape, inst.dist); })
      .def_property_readonly("leaf_count",
                             [](const Instance& inst) { return inst.shape.leaf_count(); })
      .def_property_readonly("height", [](const Instance& inst) { return inst.shape.height(); })
      .def_property_readonly("admissible",
                             [](const Instance& inst) { return inst.dist.admissible(); })
      .def_property_readonly("iid", [](const Instance& inst) { return inst.dist.iid(); })
      .def("leaf_paths",
           [](const Instance& inst) { return path_strings(inst.shape, inst.shape.leaf_ids()); })
      .def("probability",
           [](const Instance& inst, const std::string& path) {
             int id = inst.shape.require_leaf(parse_path(path));
             return cost_str(inst.dist.p_zero(inst.shape.node(id).leaf_index));
           },
           py::arg("leaf_path"))
      .def("__repr__", [](const Instance& inst) {
        return "Instance('" + serialize_tree(inst.shape, inst.dist) + "')";
      });

  m.def("parse_tree", [](const std::string& text) { return parse_tree(text); }, py::arg("text"),
        "Parse the s-expression tree format, e.g. '(and (or 1/2) (or 1/2 1/2))'.");

  m.def("solve_plan", [](const Instance& inst) { return plan_dict(solve_plan(inst.shape, inst.dist)); },
        py::arg("instance"),
        "Gate priority order with per-gate leaf orders, costs and ratios.");
  m.def("solve_cost",
        [](const Instance& inst) { return cost_str(solve_strategy_cost(inst.shape, inst.dist)); },
        py::arg("instance"));
  m.def("solve_strategy",
        [](const Instance& inst) {
          return serialize_decision_tree(solve_strategy(inst.shape, inst.dist));
        },
        py::arg("instance"), "The optimal depth-first directional strategy as decision-tree text.");

  m.def("expected_cost",
        [](const Instance& inst, const std::string& dt) {
          return cost_str(expected_cost(parse_decision_tree(dt), inst.shape, inst.dist));
        },
        py::arg("instance"), py::arg("decision_tree"));
  m.def("validate",
        [](const Instance& inst, const std::string& dt) {
          ValidationResult r = validate(parse_decision_tree(dt), inst.shape);
          return py::make_tuple(r.ok, r.ok ? std::string() : r.issue->message);
        },
        py::arg("instance"), py::arg("decision_tree"));
  m.def("is_directional",
        [](const std::string& dt) {
          DirectionalityResult r = is_directional(parse_decision_tree(dt));
          std::vector<std::string> paths;
          for (const Path& p : r.directional ? r.order : r.cycle) {
            paths.push_back(format_path(p));
          }
          return py::make_tuple(r.directional, paths);
        },
        py::arg("decision_tree"),
        "Returns (True, witness order) or (False, precedence cycle).");
  m.def("is_depth_first",
        [](const Instance& inst, const std::string& dt) {
          DepthFirstResult r = is_depth_first(parse_decision_tree(dt), inst.shape);
          std::string witness;
          if (!r.depth_first) {
            witness = "probes " + format_path(r.violating_probe) + " while " +
                      format_path(r.open_node) + " is open";
          }
          return py::make_tuple(r.depth_first, witness);
        },
        py::arg("instance"), py::arg("decision_tree"));

  m.def("optimal_cost",
        [](const Instance& inst, int max_leaves) {
          OracleResult r = optimal_cost(inst.shape, inst.dist, limits_of(max_leaves));
          return py::make_tuple(cost_str(r.cost), serialize_decision_tree(r.strategy));
        },
        py::arg("instance"), py::arg("max_leaves") = 0,
        "Exact optimum over all algorithms: (cost, strategy text).");
  m.def("optimal_depth_first_cost",
        [](const Instance& inst, int max_leaves) {
          OracleResult r = optimal_depth_first_cost(inst.shape, inst.dist, limits_of(max_leaves));
          return py::make_tuple(cost_str(r.cost), serialize_decision_tree(r.strategy));
        },
        py::arg("instance"), py::arg("max_leaves") = 0);
  m.def("optimal_first_probes",
        [](const Instance& inst, int max_leaves) {
          return path_strings(inst.shape,
                              all_optimal_first_probes(inst.shape, inst.dist, limits_of(max_leaves)));
        },
        py::arg("instance"), py::arg("max_leaves") = 0);

  m.def("verify_report",
        [](int trials, uint64_t seed, int max_leaves, int max_branch, int max_gate_leaves,
           unsigned denom) {
          VerifyOptions options;
          options.trials = trials;
          options.seed = seed;
          options.bounds.max_gates = max_branch;
          options.bounds.max_gate_leaves = max_gate_leaves;
          if (max_leaves > 0) options.bounds.max_leaves = max_leaves;
          options.bounds.denom_bound = denom;
          std::ostringstream out;
          render_verify(out, verify_theorem(options));
          return out.str();
        },
        py::arg("trials"), py::arg("seed") = RunConfig::kDefaultSeed, py::arg("max_leaves") = 0,
        py::arg("max_branch") = 4, py::arg("max_gate_leaves") = 3, py::arg("denom") = 16);
  m.def("gap_search_report",
        [](int trials, uint64_t seed, unsigned denom, int stop_after) {
          GapSearchOptions options;
          options.trials = trials;
          options.seed = seed;
          options.denom_bound = denom;
          options.stop_after = stop_after;
          std::ostringstream out;
          render_gap_search(out, gap_search(options));
          return out.str();
        },
        py::arg("trials"), py::arg("seed") = RunConfig::kDefaultSeed, py::arg("denom") = 16,
        py::arg("stop_after") = 0);
  m.def("case_identity_report",
        [](const Instance& inst, const std::string& probe) {
          std::ostringstream out;
          render_case_identity(out, make_case_scenario(inst, parse_path(probe)));
          return out.str();
        },
        py::arg("instance"), py::arg("probe"));
  m.def("h3_demo_report",
        [](py::object instance) {
          Instance inst = instance.is_none() ? default_height3_instance()
                                             : instance.cast<Instance>();
          std::ostringstream out;
          render_h3_demo(out, height3_priority_demo(inst));
          return out.str();
        },
        py::arg("instance") = py::none());
}
