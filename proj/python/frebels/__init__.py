"""Firing Rebels simulator and network checkers."""

from ._frebels import (
    DiGraph,
    ScenarioError,
    find_co_root,
    frimp,
    infinity,
    is_co_root,
    is_k_connected,
    is_strong_root,
    knowledge_conditions,
    max_disjoint_paths,
    relay_solvable,
    run_scenario,
    run_scenario_file,
    solvability_report,
)

__all__ = [
    "DiGraph",
    "ScenarioError",
    "find_co_root",
    "frimp",
    "infinity",
    "is_co_root",
    "is_k_connected",
    "is_strong_root",
    "knowledge_conditions",
    "max_disjoint_paths",
    "relay_solvable",
    "run_scenario",
    "run_scenario_file",
    "solvability_report",
]
