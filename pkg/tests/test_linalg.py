import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logforest.errors import NumericalError
from logforest.graph import WeightedMultigraph, complete_graph, laplacian, path_graph, random_multigraph
from logforest.linalg import elementwise_log, invert_spd, laplacian_pseudoinverse


def test_invert_2x2():
    np.testing.assert_allclose(invert_spd([[2, -1], [-1, 2]]), np.array([[2, 1], [1, 2]]) / 3, rtol=1e-14)


def test_invert_identity():
    np.testing.assert_array_equal(invert_spd(np.eye(5)), np.eye(5))


def test_invert_k3_kernel():
    m = 4 * np.eye(3) - np.ones((3, 3))  # I + L for unit K3
    x = invert_spd(m)
    np.testing.assert_allclose(x, (np.eye(3) + np.ones((3, 3))) / 4, rtol=1e-14)
    np.testing.assert_allclose(m @ x, np.eye(3), atol=1e-14)


def test_invert_result_is_exactly_symmetric(rng):
    a = rng.normal(size=(30, 30))
    x = invert_spd(a @ a.T + 30 * np.eye(30))
    assert np.array_equal(x, x.T)


@pytest.mark.parametrize("n", [1, 5, 20, 50])
def test_double_inverse(rng, n):
    for _ in range(5):
        a = rng.normal(size=(n, n))
        m = a @ a.T + n * np.eye(n)
        np.testing.assert_allclose(invert_spd(invert_spd(m)), m, atol=1e-8)


def test_invert_rejects_indefinite_and_nonsquare():
    with pytest.raises(NumericalError):
        invert_spd([[1, 2], [2, 1]])
    with pytest.raises(ValueError):
        invert_spd(np.ones((2, 3)))


def test_residual_guard_fires_on_ill_conditioned_input():
    # I + L of K2 with an enormous weight: factorization succeeds, inverse is garbage
    w = 1e17
    with pytest.raises(NumericalError, match="residual"):
        invert_spd(np.eye(3) + laplacian(WeightedMultigraph(3, ((1, 2, w), (2, 3, 1.0)))))


def test_kernel_positive_for_connected_graphs(rng):
    for _ in range(30):
        g = random_multigraph(rng, int(rng.integers(2, 9)), 10)
        q = invert_spd(np.eye(g.n) + laplacian(g))
        assert (q > 0).all()


def test_pseudoinverse_k2():
    np.testing.assert_allclose(
        laplacian_pseudoinverse(laplacian(complete_graph(2))), np.array([[1, -1], [-1, 1]]) / 4, atol=1e-15
    )


def test_pseudoinverse_k3_resistance():
    X = laplacian_pseudoinverse(laplacian(complete_graph(3)))
    np.testing.assert_allclose(X, X.T)
    for i in range(3):
        for j in range(3):
            if i != j:
                assert X[i, i] - X[i, j] == pytest.approx(1 / 3, abs=1e-14)


def test_pseudoinverse_matches_numpy_pinv(rng):
    for _ in range(20):
        g = random_multigraph(rng, int(rng.integers(2, 9)), 12)
        np.testing.assert_allclose(laplacian_pseudoinverse(laplacian(g)), np.linalg.pinv(laplacian(g)), atol=1e-10)


def test_pseudoinverse_properties(rng):
    for _ in range(30):
        g = random_multigraph(rng, int(rng.integers(2, 9)), 12)
        L = laplacian(g)
        n = g.n
        X = laplacian_pseudoinverse(L)
        np.testing.assert_allclose(X.sum(axis=1), 0, atol=1e-8)
        np.testing.assert_allclose(L @ X, np.eye(n) - np.full((n, n), 1 / n), atol=1e-8)
        np.testing.assert_allclose(L @ X @ L, L, atol=1e-8)
        for shift in (0.5, 2.0, float(n), -1.5):
            np.testing.assert_allclose(laplacian_pseudoinverse(L, shift), X, atol=1e-8)


def test_pseudoinverse_disconnected_fails():
    with pytest.raises(NumericalError):
        laplacian_pseudoinverse(laplacian(WeightedMultigraph(3, ((1, 2, 1.0),))))


def test_elementwise_log():
    np.testing.assert_array_equal(elementwise_log(np.ones((3, 3)), 7.0), np.zeros((3, 3)))
    q = (np.eye(3) + np.ones((3, 3))) / 4
    out = elementwise_log(q, 1.0)
    np.testing.assert_allclose(np.diag(out), np.log(0.5))
    assert out[0, 1] == pytest.approx(np.log(0.25))
    with pytest.raises(NumericalError):
        elementwise_log(np.array([[1.0, 0.0], [0.0, 1.0]]), 1.0)


@given(st.floats(1 - 1e-3, 1 + 1e-3).filter(lambda a: a != 1))
def test_log_base_factor_tends_to_one(alpha):
    assert (alpha - 1) / np.log(alpha) == pytest.approx(1.0, abs=1e-3)
