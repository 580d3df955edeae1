"""Random graphs from product random measures and random edge transforms."""

import json

from ._measuregraph import (
    BudgetError,
    ModelSpec,
    NumericalError,
    bn_dag_loglik,
    bn_infer,
    degree_moments,
    degree_pmf,
    edge_density_max,
    edge_density_zeta,
    gc_threshold_uniform,
    gc_threshold_zeta,
    generate_adjacency,
    is_graphical,
    prime_density_max,
    prime_density_zeta,
    realize_degree_sequence,
    spec,
    spin_partition,
)
from . import _measuregraph as _core


def generate(model, seed):
    """Graph as a dict: labels, adjacency, flags and provenance."""
    return json.loads(_core.generate_json(model, seed))


def edge_report(model):
    return json.loads(_core.edge_report_json(model))


def sobol(model):
    return json.loads(_core.sobol_json(model))


def spectral(model, rank=5):
    return json.loads(_core.spectral_json(model, rank))


def estimate(graphs, m=3, iterations=500, sigma=0.01, hint="none", separable=True, seed=0):
    return json.loads(_core.estimate_json(list(graphs), m, iterations, sigma, hint, separable, seed))


def nn_wire(layers, p, kappa="poisson:10", seed=0):
    return json.loads(_core.nn_wire_json(layers, list(p), kappa, seed))


__all__ = [
    "BudgetError", "ModelSpec", "NumericalError", "bn_dag_loglik", "bn_infer", "degree_moments", "degree_pmf",
    "edge_density_max", "edge_density_zeta", "edge_report", "estimate", "gc_threshold_uniform", "gc_threshold_zeta",
    "generate", "generate_adjacency", "is_graphical", "nn_wire", "prime_density_max", "prime_density_zeta",
    "realize_degree_sequence", "sobol", "spec", "spectral", "spin_partition",
]
