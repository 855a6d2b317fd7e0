import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_measure_pair
from hypercurv.transport import (
    DiscreteMeasure,
    TransportError,
    TransportProblem,
    solve_transport,
    w1_oracle_small,
    wasserstein1,
)


def _metric_cost(rng, p, q):
    # distances between random points on a small integer line, a genuine metric
    xs = rng.integers(0, 5, p)
    ys = rng.integers(0, 5, q)
    return np.abs(xs[:, None] - ys[None, :]).astype(float)


def test_dirac_to_dirac():
    assert wasserstein1(TransportProblem(np.array([1.0]), np.array([1.0]), np.array([[1.0]]))) == 1.0


def test_identical_measures_zero():
    a = np.array([0.2, 0.3, 0.5])
    C = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]], float)
    assert wasserstein1(TransportProblem(a, a, C)) == pytest.approx(0.0, abs=1e-12)


def test_uniform_pair_hand_value():
    # mass 1/2 at {0,1} to 1/2 at {1,2} on a path: move 1/2 two steps or 1/2+1/2 one step
    a = np.array([0.5, 0.5])
    b = np.array([0.5, 0.5])
    C = np.array([[1.0, 2.0], [0.0, 1.0]])
    assert wasserstein1(TransportProblem(a, b, C)) == pytest.approx(1.0, abs=1e-12)


def test_random_instances_match_lp():
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(1000):
        p, q = rng.integers(1, 7, 2)
        a, b = random_measure_pair(rng, p, q)
        C = rng.integers(0, 4, (p, q)).astype(float)
        prob = TransportProblem(a, b, C)
        worst = max(worst, abs(wasserstein1(prob) - w1_oracle_small(prob)))
    assert worst <= 1e-9


def test_plan_marginals_and_value():
    rng = np.random.default_rng(1)
    for _ in range(200):
        p, q = rng.integers(1, 12, 2)
        a, b = random_measure_pair(rng, p, q)
        C = rng.random((p, q))
        res = solve_transport(a, b, C)
        assert np.all(res.plan >= 0)
        assert np.allclose(res.plan.sum(axis=1), a, atol=1e-12)
        assert np.allclose(res.plan.sum(axis=0), b, atol=1e-12)
        assert res.value == pytest.approx(float(np.sum(res.plan * C)), abs=1e-12)


def test_symmetry_and_scaling():
    rng = np.random.default_rng(2)
    for _ in range(200):
        p, q = rng.integers(1, 7, 2)
        a, b = random_measure_pair(rng, p, q)
        C = _metric_cost(rng, p, q)
        w = wasserstein1(TransportProblem(a, b, C))
        assert w >= 0
        assert wasserstein1(TransportProblem(b, a, C.T)) == pytest.approx(w, abs=1e-9)
        assert wasserstein1(TransportProblem(a, b, 3.0 * C)) == pytest.approx(3.0 * w, abs=1e-9)


def test_lipschitz_lower_bound():
    # any 1-Lipschitz f on the line gives sum f dmu - sum f dnu <= W1; f(x) = x is one
    rng = np.random.default_rng(3)
    for _ in range(200):
        p, q = rng.integers(1, 8, 2)
        a, b = random_measure_pair(rng, p, q)
        xs = rng.integers(0, 6, p).astype(float)
        ys = rng.integers(0, 6, q).astype(float)
        C = np.abs(xs[:, None] - ys[None, :])
        w = wasserstein1(TransportProblem(a, b, C))
        assert abs(a @ xs - b @ ys) <= w + 1e-12
        # on the line W1 is the L1 distance between CDFs
        grid = np.arange(6)
        Fa = np.array([a[xs <= g].sum() for g in grid])
        Fb = np.array([b[ys <= g].sum() for g in grid])
        assert w == pytest.approx(np.abs(Fa - Fb)[:-1].sum(), abs=1e-9)


@settings(max_examples=100)
@given(st.integers(1, 25), st.integers(1, 25), st.integers(0, 2**32 - 1))
def test_larger_supports_feasible_and_not_above_greedy(p, q, seed):
    rng = np.random.default_rng(seed)
    a, b = random_measure_pair(rng, p, q)
    C = rng.integers(0, 4, (p, q)).astype(float)
    res = solve_transport(a, b, C)
    # the product coupling is feasible, so the optimum cannot exceed it
    assert res.value <= float(a @ C @ b) + 1e-12
    assert np.allclose(res.plan.sum(axis=1), a, atol=1e-12)


def test_degenerate_ties():
    a = np.full(4, 0.25)
    C = np.ones((4, 4))
    assert wasserstein1(TransportProblem(a, a, C)) == pytest.approx(1.0, abs=1e-12)
    C = np.zeros((4, 4))
    assert wasserstein1(TransportProblem(a, a, C)) == 0.0


def test_errors():
    with pytest.raises(TransportError):
        solve_transport([0.5, 0.5], [1.0], np.ones((2, 2)))
    with pytest.raises(TransportError):
        solve_transport([0.5, 0.6], [1.0], np.ones((2, 1)))
    with pytest.raises(TransportError):
        solve_transport([1.0], [1.0], np.array([[np.inf]]))
    with pytest.raises(TransportError):
        solve_transport([-0.5, 1.5], [1.0], np.ones((2, 1)))
    with pytest.raises(TransportError):
        DiscreteMeasure(np.array([1, 1]), np.array([0.5, 0.5]))
    with pytest.raises(TransportError):
        DiscreteMeasure(np.array([1, 2]), np.array([0.5, 0.6]))


def test_oracle_size_limit():
    a = np.full(7, 1 / 7)
    with pytest.raises(TransportError):
        w1_oracle_small(TransportProblem(a, a, np.zeros((7, 7))))
