import itertools
import math
from fractions import Fraction

import pytest

import lagrange_homotopy as lh


def test_degree_counts():
    assert lh.algebraic_degree(6, [3]) == 96
    assert lh.refined_degree([4, 2, 3]) == 12
    assert lh.refined_degree([1, 2, 2, 2]) == 1
    for k in range(7):
        brute = sum(all(p[i] != i for i in range(k)) for p in itertools.permutations(range(k)))
        assert lh.derangement(k) == brute


def test_unit_circle():
    p = lh.Problem([3.0, 4.0], [((0, 0), -1), ((2, 0), 1), ((0, 2), 1)])
    r = lh.solve(p, seed=1)
    assert r["expected_count"] == 2
    assert len(r["points"]) == 2
    best = r["points"][r["global_minimum"]]
    assert best["is_real"]
    assert best["objective"] == pytest.approx(-5.0, rel=1e-12)
    assert best["x"][0].real == pytest.approx(-0.6, rel=1e-12)


def test_dense_instance_count():
    p = lh.random_dense_problem(4, 3, seed=2)
    r = lh.solve(p, threads=2)
    assert len(r["points"]) == r["expected_count"] == 3 * 2**3
    assert r["converged"] + r["diverged"] + r["failed"] == r["paths_tracked"]
    assert max(pt["residual"] for pt in r["points"]) < 1e-8


def test_round_trip():
    p = lh.random_dense_problem(2, 2, seed=3)
    text = lh.serialize_problem(p, seed=9)
    q, seed = lh.parse_problem(text)
    assert seed == 9
    assert q.u == p.u
    assert lh.serialize_problem(q, seed=9) == text


def test_bad_input():
    with pytest.raises(ValueError):
        lh.parse_problem('{"format": 1, "n": 1, "objective": [1], "constraint": []}')
    with pytest.raises(ValueError):
        lh.solve(lh.Problem([1.0, 1.0], [((0, 0), 1), ((1, 1), 1), ((1, 0), 1), ((0, 1), 1)]))


def test_tropical():
    unique, sols = lh.tropical_check([2, 3, 4])
    assert unique
    assert sols == [[1, 1, 1, 0]]
    cells = lh.lower_hull_cells([(0, "0"), (1, "3"), (2, "1"), (3, "2")])
    assert [c[1] for c in cells] == [Fraction(-1, 2), Fraction(-1)]
    assert math.isclose(float(cells[0][1]), -0.5)
