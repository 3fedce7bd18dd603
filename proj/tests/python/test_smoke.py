"""Smoke tests for the python module against the cmake-built extension."""

from fractions import Fraction

import pytest

import andortree as at

REFERENCE = "(and (or 1/2) (or 1/2 1/2))"


def test_parse_and_serialize():
    inst = at.parse_tree("( and (or 2/4)  (or 1/2 1/2) )")
    assert inst.serialize() == REFERENCE
    assert inst.leaf_count == 3
    assert inst.height == 2
    assert inst.admissible
    assert inst.leaf_paths() == ["0.0", "1.0", "1.1"]
    assert inst.probability("1.1") == "1/2"


def test_parse_errors():
    with pytest.raises(ValueError):
        at.parse_tree("(and (or 3/2))")
    with pytest.raises(ValueError):
        at.parse_tree("(nope 1/2)")


def test_solve_matches_reference():
    inst = at.parse_tree(REFERENCE)
    assert at.solve_cost(inst) == "7/4"
    plan = at.solve_plan(inst)
    assert plan["gate_order"] == [0, 1]
    assert plan["gates"][1]["ratio"] == "6"
    strategy = at.solve_strategy(inst)
    assert at.expected_cost(inst, strategy) == "7/4"
    assert at.fraction(at.solve_cost(inst)) == Fraction(7, 4)


def test_checks_on_solver_output():
    inst = at.parse_tree(REFERENCE)
    strategy = at.solve_strategy(inst)
    ok, message = at.validate(inst, strategy)
    assert ok and message == ""
    directional, order = at.is_directional(strategy)
    assert directional
    assert order[0] == "0.0"
    depth_first, witness = at.is_depth_first(inst, strategy)
    assert depth_first and witness == ""


def test_oracle_agrees_with_solver():
    inst = at.parse_tree(REFERENCE)
    cost, strategy = at.optimal_cost(inst)
    assert cost == "7/4"
    assert at.expected_cost(inst, strategy) == "7/4"
    df_cost, _ = at.optimal_depth_first_cost(inst)
    assert df_cost == "7/4"
    assert "0.0" in at.optimal_first_probes(inst)


def test_invalid_algorithm_is_reported():
    inst = at.parse_tree(REFERENCE)
    ok, message = at.validate(inst, "(ask 0.0 0 1)")
    assert not ok
    assert "unresolved" in message


def test_verify_report_is_clean_and_deterministic():
    first = at.verify_report(trials=40, seed=7)
    second = at.verify_report(trials=40, seed=7)
    assert first == second
    assert "failures: 0" in first


def test_gap_search_finds_a_witness():
    report = at.gap_search_report(trials=200, seed=42, stop_after=1)
    assert "witnesses: 1" in report
    assert "optimum-depth-first: no" in report


def test_h3_demo_default_instance():
    report = at.h3_demo_report()
    assert "side-gate-zero-prob: 1/4" in report
    assert "root-never-resolved: yes" in report
