"""Markov blanket discovery from multiple interventional datasets."""

import json

from ._mimb import (
    ConstraintError,
    Dag,
    InputError,
    InvariantError,
    chi_square_upper_tail,
    load_network,
    trace_fixture,
)
from . import _mimb

__all__ = [
    "ConstraintError",
    "Dag",
    "InputError",
    "InvariantError",
    "chi_square_upper_tail",
    "discover",
    "discover_oracle",
    "load_network",
    "trace_fixture",
    "verify_theorems",
]


def discover(manifest, target="", algo="mimb", alpha=0.01, max_cond=3, symmetry=False):
    """Run an algorithm on the datasets listed in a manifest; returns the report dict."""
    return json.loads(_mimb._discover_manifest(str(manifest), target, algo, alpha, max_cond, symmetry))


def discover_oracle(dag, interventions, target, algo="mimb", max_cond=64, symmetry=True):
    """Run an algorithm with d-separation on the post-intervention graphs as the test."""
    return json.loads(_mimb._discover_oracle(dag, [list(s) for s in interventions], target, algo, max_cond, symmetry))


def verify_theorems(trials=100, min_nodes=6, max_nodes=10, edge_prob=0.3, seed=1):
    """Fuzz the union/intersection relations; returns per-row failure counts."""
    return json.loads(_mimb._verify_theorems(trials, min_nodes, max_nodes, edge_prob, seed))
