import math
from fractions import Fraction

import numpy as np
import pytest

import paspec


def test_generate_is_deterministic():
    a = paspec.generate(2, 200, seed=5)
    b = paspec.generate(2, 200, seed=5)
    assert a == b
    assert a.edge_count == 400
    assert sum(a.degrees()) == 800
    assert paspec.parse_edge_list(a.to_edge_list()) == a


def test_truncation_keeps_labels():
    g = paspec.generate(3, 100, seed=1, epsilon=0.25)
    assert g.vertex_offset == 26
    assert g.vertex_count == 75
    assert all(u >= 26 and v >= 26 for u, v in g.edges())


def test_exact_probability_matches_enumeration():
    edges = [(2, 1), (3, 1), (4, 1)]
    assert paspec.exact_probability(edges, 4) == Fraction(8, 35)
    assert paspec.enumerated_probability(edges, 4) == Fraction(8, 35)
    assert paspec.exact_probability([(2, 1)], 2) == Fraction(2, 3)


def test_trace_matches_eigenvalues():
    g = paspec.generate(3, 120, seed=2)
    lam = np.array(paspec.eigenvalues(g))
    a = paspec.adjacency(g)
    assert a.shape == (120, 120)
    assert np.array_equal(a, a.T)
    for k in range(1, 6):
        assert math.isclose(float(np.sum(lam**k)), paspec.trace_power(g, k), rel_tol=1e-9)
    g22 = paspec.from_pairs(2, [(1, 1), (1, 1), (1, 2), (2, 2)])
    assert paspec.trace_power(g22, 2) == 7


def test_interval_distance():
    assert paspec.interval_distance([0.0, 1.0], [0.0, 1.0]) == 0.0
    assert paspec.interval_distance([1.0, -1.0], [0.0]) == pytest.approx(1.0)


def test_moments():
    eps, m = 0.1, 2
    closed = 2 * m * (1 - math.sqrt(eps)) / (1 + math.sqrt(eps))
    assert paspec.limit_moment(2, eps, m) == pytest.approx(closed, rel=1e-12)
    table = paspec.moment_table(6, eps, m)
    assert table[0] == 1.0 and table[1] == 0.0 and table[2] == pytest.approx(closed)
    assert paspec.psi([1, 1], 1e-12, 3) == pytest.approx(1 / 3, rel=1e-5)


def test_census_single_edge():
    g22 = paspec.from_pairs(2, [(1, 1), (1, 1), (1, 2), (2, 2)])
    assert paspec.count_subgraphs(g22, 1, [(1, 1)]) == 3
    assert paspec.count_subgraphs(g22, 2, [(1, 2)]) == 1


def test_density_of_point_mass():
    out = paspec.reconstruct_density([1, 0, 0, 0, 0], sigma=0.2, half_width=2.0, gridsize=801)
    x = np.array(out["grid"])
    f = np.array(out["density"])
    ref = np.exp(-x**2 / 0.08) / (0.2 * math.sqrt(2 * math.pi))
    assert np.max(np.abs(f - ref)) < 1e-6
    assert out["warning"] is None


def test_edge_and_localization():
    g = paspec.from_pairs(26, [(1, v) for v in range(2, 27)])
    (value, vec), = paspec.top_eigenpairs(g, 1)
    assert value == pytest.approx(5.0)
    assert np.linalg.norm(vec) == pytest.approx(1.0)
    assert paspec.edge_law(g, 1)[0] == pytest.approx(1.0)
    sup, second = paspec.localization(g, 1)[0]
    assert sup == pytest.approx(1 / math.sqrt(2))


def test_run_experiment(tmp_path):
    out = paspec.run_experiment("experiment = verify-prob\nn = 5\n", str(tmp_path))
    assert out["exit_code"] == 0
    assert (tmp_path / "manifest.json").exists()
    with pytest.raises(ValueError):
        paspec.run_experiment("bogus = 1\n", str(tmp_path))
