import math

import numpy as np
import pytest

import measuregraph as mg


def test_generate_complete_graph():
    spec = mg.spec("dirac:6", "bernoulli:constant:1")
    a = mg.generate_adjacency(spec, 3)
    assert a.shape == (6, 6)
    assert np.array_equal(a, np.ones((6, 6)) - np.eye(6))
    g = mg.generate(spec, 3)
    assert len(g["vertices"]) == 6
    assert len(g["edges"]) == 15


def test_generate_is_reproducible():
    spec = mg.spec("poisson:10", "bernoulli:power_law:1")
    assert np.array_equal(mg.generate_adjacency(spec, 11), mg.generate_adjacency(spec, 11))


def test_spec_json_round_trip():
    spec = mg.spec("poisson:20", "bernoulli:exponential:2")
    again = mg.ModelSpec.from_json(spec.to_json())
    assert again.hash() == spec.hash()
    assert not spec.directed


def test_binomial_degree_law():
    p = mg.degree_pmf(mg.spec("dirac:20", "bernoulli:constant:0.3"), 25)
    for k in range(20):
        assert p[k] == pytest.approx(math.comb(19, k) * 0.3**k * 0.7 ** (19 - k), abs=1e-10)
    mean, var = mg.degree_moments(mg.spec("dirac:20", "bernoulli:constant:0.3"))
    assert mean == pytest.approx(19 * 0.3)
    assert var == pytest.approx(19 * 0.3 * 0.7)


def test_edge_report():
    r = mg.edge_report(mg.spec("dirac:10", "bernoulli:constant:0.5"))
    assert r["edge_count"]["normalized"] == pytest.approx(45 * 0.5)


def test_sobol_constant_kernel_has_no_indices():
    s = mg.sobol(mg.spec("poisson:5", "bernoulli:constant:0.4"))
    assert s["effective_dimension"] == 0.0
    assert s["indices"]["s1"] is None


def test_spectral_rank_one():
    s = mg.spectral(mg.spec("poisson:5", "bernoulli:constant:0.3"), rank=2)
    assert s["sigma"][0] == pytest.approx(0.3)
    assert s["sigma"][1] == pytest.approx(0.0, abs=1e-12)


def test_prime_maxima():
    s, v = mg.prime_density_max()
    assert s == pytest.approx(1.49107, abs=1e-3)
    assert v == pytest.approx(0.325236, abs=1e-4)
    assert mg.gc_threshold_uniform(2) == math.inf


def test_graphicality_and_realization():
    assert mg.is_graphical([3, 3, 2, 2, 2], "EG")
    assert not mg.is_graphical([3, 1], "EG")
    a = mg.realize_degree_sequence([3, 3, 2, 2, 2], "simple", 1)
    assert list(a.sum(axis=1)) == [3, 3, 2, 2, 2]
    with pytest.raises(ValueError):
        mg.realize_degree_sequence([3, 1], "simple", 1)


def test_spin_paths_agree():
    g = mg.spin_partition(4, "bernoulli:0.5", 1.0, betas=[0.5, 1.0], path="gibbs")
    l = mg.spin_partition(4, "bernoulli:0.5", 1.0, betas=[0.5, 1.0], path="laplace")
    assert g == pytest.approx(l, rel=1e-12)
    with pytest.raises(mg.BudgetError):
        mg.spin_partition(21, "bernoulli:0.5", 1.0, betas=[1.0])


def test_estimate_returns_parameters():
    spec = mg.spec("poisson:30", "bernoulli:power_law:1")
    graphs = [mg.generate_adjacency(spec, s) for s in range(3)]
    r = mg.estimate(graphs, iterations=20, hint="decreasing", seed=1)
    assert len(r["theta_hat"]["theta"]) == 9
    assert r["c"] > 0


def test_bayes_net_inference():
    rng = np.random.default_rng(0)
    x = rng.normal(size=300)
    data = np.column_stack([x, x + 0.5 * rng.normal(size=300), rng.normal(size=300)])
    best, ll, trace = mg.bn_infer(data, iterations=50, q=3, r=3, seed=2)
    assert best.shape == (3, 3)
    assert len(trace) == 51
    assert ll == pytest.approx(mg.bn_dag_loglik(best, data, 3, 3))


def test_invalid_parameters_raise():
    with pytest.raises(ValueError):
        mg.spec("poisson:-1", "bernoulli:constant:0.3")
    with pytest.raises(ValueError):
        mg.spec("poisson:5", "bernoulli:constant:1.5")


def test_nn_wire():
    r = mg.nn_wire(3, [0.5, 0.5], kappa="dirac:4", seed=1)
    assert "expected_edges" in r
