import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logforest.classical import metric_violations, resistance_matrix, shortest_path_matrix
from logforest.errors import NumericalError
from logforest.family import (
    PRESETS,
    SHORTEST_PATH_FAMILY,
    UNIFIED_FAMILY,
    WSP_FAMILY,
    Constant,
    FamilyConfig,
    Formula13,
    HVariant,
    Interpolating,
    One,
    convergence_report,
    distance_from_h,
    h_matrix,
    kernel_matrix,
    log_factor,
    log_forest_distance_matrix,
    ordinary_forest_distance_matrix,
)
from logforest.forests import enumerate_rooted_forests
from logforest.graph import Transform, complete_graph, laplacian, path_graph, transform_weights

from conftest import random_connected

LN2_GAMMA = math.log(math.e + 1) * math.log(2)  # 0.910283636...
GAMMAS = [Formula13(), One(), Interpolating(1.0)]
ALL_CONFIGS = [FamilyConfig(t, h, gm) for t in Transform for h in HVariant for gm in GAMMAS]


def test_presets():
    assert PRESETS["shortest-path-preset"] == FamilyConfig(Transform.LINEAR, HVariant.STANDARD, Formula13())
    assert WSP_FAMILY == FamilyConfig(Transform.POWER, HVariant.STANDARD, One())
    assert UNIFIED_FAMILY == FamilyConfig(Transform.EXP_SCALED, HVariant.ALPHA_LN, Interpolating(1.0))


@given(st.floats(1e-8, 1e8), st.integers(2, 50), st.floats(0.01, 100))
def test_gamma_rules_positive(alpha, n, beta):
    for rule in (Formula13(), One(), Interpolating(beta), Constant(beta)):
        assert rule(alpha, n) > 0


def test_gamma_rule_validation():
    with pytest.raises(ValueError):
        Interpolating(0.0)
    with pytest.raises(ValueError):
        Constant(-1.0)


def test_formula13_limits():
    rule = Formula13()
    assert rule(1e-12, 4) == pytest.approx(1.0, abs=1e-5)
    for n in (2, 3, 5):
        a = 1e40
        assert rule(a, n) / (2 / n * math.log(a)) == pytest.approx(1.0, abs=1e-3)


def test_interpolating_limits():
    rule = Interpolating(1.0)
    assert rule(1e-9, 5) == pytest.approx(1.0)
    assert rule(1e9, 5) == pytest.approx(0.4)


def test_kernel_examples(K2, K3):
    np.testing.assert_allclose(kernel_matrix(K2, SHORTEST_PATH_FAMILY, 1.0), [[2 / 3, 1 / 3], [1 / 3, 2 / 3]])
    q = kernel_matrix(K3, SHORTEST_PATH_FAMILY, 1.0)
    np.testing.assert_allclose(q, (np.eye(3) + np.ones((3, 3))) / 4)
    tally = enumerate_rooted_forests(K3)
    np.testing.assert_allclose(q, tally.F / tally.f)


@pytest.mark.parametrize("cfg", ALL_CONFIGS[::3])
def test_kernel_is_an_inverse(rng, cfg):
    for alpha in (0.3, 1.0, 4.0):
        g = random_connected(rng, 6)
        q = kernel_matrix(g, cfg, alpha)
        g_alpha = transform_weights(g, cfg, alpha)
        np.testing.assert_allclose(q @ (np.eye(g.n) + laplacian(g_alpha)), np.eye(g.n), atol=1e-8)
        assert (q > 0).all()
        np.testing.assert_array_equal(q, q.T)


def test_h_matrix_at_alpha_one(K3):
    q = kernel_matrix(K3, SHORTEST_PATH_FAMILY, 1.0)
    h = h_matrix(q, SHORTEST_PATH_FAMILY, 1.0, 3)
    gamma = math.log(math.e + 1)
    assert h.gamma == pytest.approx(gamma)
    np.testing.assert_allclose(np.diag(h.values), gamma * math.log(0.5))
    assert h.values[0, 1] == pytest.approx(gamma * math.log(0.25))


@pytest.mark.parametrize("cfg", ALL_CONFIGS)
def test_h_of_ones_is_zero(cfg):
    h = h_matrix(np.ones((3, 3)), cfg, 2.5)
    np.testing.assert_array_equal(h.values, 0)
    np.testing.assert_array_equal(distance_from_h(h), 0)


def test_h_matrix_continuity_at_one(K3):
    q1 = kernel_matrix(K3, SHORTEST_PATH_FAMILY, 1.0)
    base = h_matrix(q1, SHORTEST_PATH_FAMILY, 1.0).values
    for a in (1 - 1e-6, 1 + 1e-6):
        np.testing.assert_allclose(h_matrix(q1, SHORTEST_PATH_FAMILY, a).values, base, atol=1e-5)


def test_h_matrix_rejects_nonpositive_kernel():
    with pytest.raises(NumericalError):
        h_matrix(np.array([[0.5, 0.0], [0.0, 0.5]]), SHORTEST_PATH_FAMILY, 2.0)


def test_log_factor_variants():
    assert log_factor(FamilyConfig(gamma=One()), 1.0, 3) == (1.0, 1.0)
    g, f = log_factor(FamilyConfig(gamma=One()), math.e, 3)
    assert f == pytest.approx(math.e - 1)
    g, f = log_factor(FamilyConfig(h_variant=HVariant.ALPHA_LN, gamma=Constant(2.0)), 3.0, 3)
    assert f == 6.0


def test_distance_from_h_examples(K2, K3):
    np.testing.assert_array_equal(distance_from_h(np.zeros((4, 4))), 0)
    D2 = log_forest_distance_matrix(K2, SHORTEST_PATH_FAMILY, 1.0)
    assert D2[0, 1] == pytest.approx(LN2_GAMMA, rel=1e-12)
    D3 = log_forest_distance_matrix(K3, SHORTEST_PATH_FAMILY, 1.0)
    # same closed form: f_ii = 8, f_ij = 4, n = 3 changes gamma only through 1^(2/3) = 1
    np.testing.assert_allclose(D3, LN2_GAMMA * (1 - np.eye(3)), rtol=1e-12)


def closed_form(g, cfg, alpha):
    """Distances from enumerated forests of G_alpha, no matrix inverse involved."""
    tally = enumerate_rooted_forests(transform_weights(g, cfg, alpha))
    _, factor = log_factor(cfg, alpha, g.n)
    F = tally.F
    d = np.diag(F)
    D = factor * np.log(np.sqrt(d[:, None] * d[None, :]) / F)
    np.fill_diagonal(D, 0.0)
    return D


def test_closed_form_matches_pipeline(rng):
    checked = 0
    for _ in range(12):
        g = random_connected(rng, 5)
        for cfg in ALL_CONFIGS:
            for alpha in (0.1, 0.5, 1.0, 2.0, 10.0):
                try:
                    D = log_forest_distance_matrix(g, cfg, alpha)
                except NumericalError:
                    continue
                np.testing.assert_allclose(D, closed_form(g, cfg, alpha), rtol=1e-8, atol=1e-8)
                checked += 1
    assert checked > 600


def test_scaling_gamma_scales_distances(rng):
    for _ in range(10):
        g = random_connected(rng, 7)
        for t, h in itertools.product(Transform, HVariant):
            base = log_forest_distance_matrix(g, FamilyConfig(t, h, Constant(1.0)), 0.7)
            scaled = log_forest_distance_matrix(g, FamilyConfig(t, h, Constant(3.5)), 0.7)
            np.testing.assert_allclose(scaled, 3.5 * base, rtol=1e-12)


def test_geodetic_on_p3_and_strict_on_k3(P3, K3):
    for cfg in ALL_CONFIGS:
        for alpha in (0.1, 1.0, 10.0):
            D = log_forest_distance_matrix(P3, cfg, alpha)
            assert D[0, 1] + D[1, 2] == pytest.approx(D[0, 2], abs=1e-9 * (1 + D.max()))
            D = log_forest_distance_matrix(K3, cfg, alpha)
            assert D[0, 1] + D[1, 2] > D[0, 2] + 1e-6


def test_p4_ordering(P4):
    for alpha in (0.1, 1.0, 10.0):
        D = log_forest_distance_matrix(P4, SHORTEST_PATH_FAMILY, alpha)
        assert D[0, 1] < D[1, 2]
        Dt = ordinary_forest_distance_matrix(P4, alpha)
        assert Dt[0, 1] > Dt[1, 2]


def test_ordinary_forest_limits(K3):
    Dt = ordinary_forest_distance_matrix(K3, 1e-6)
    np.testing.assert_allclose(Dt[~np.eye(3, dtype=bool)], 1.0, atol=1e-4)
    ratio = ordinary_forest_distance_matrix(K3, 1e5)[0, 1:] / resistance_matrix(K3)[0, 1:]
    assert np.ptp(ratio) < 1e-3
    for a in (0.1, 1.0, 10.0):
        assert metric_violations(ordinary_forest_distance_matrix(path_graph(5), a)) == []


def test_disconnected_graph_gets_inf(split3):
    for cfg in ALL_CONFIGS[:6]:
        D = log_forest_distance_matrix(split3, cfg, 0.5)
        assert D[0, 2] == np.inf and np.isfinite(D[0, 1]) and D[2, 2] == 0
    # component-local n: the block equals the distances on K2 alone
    np.testing.assert_allclose(
        log_forest_distance_matrix(split3, SHORTEST_PATH_FAMILY, 7.0)[:2, :2],
        log_forest_distance_matrix(complete_graph(2), SHORTEST_PATH_FAMILY, 7.0),
    )


def test_metric_axioms_random(rng):
    for _ in range(8):
        g = random_connected(rng, 8)
        for cfg in ALL_CONFIGS:
            for alpha in (0.5, 1.0, 2.0):
                assert metric_violations(log_forest_distance_matrix(g, cfg, alpha)) == []


def test_rejects_bad_alpha(K3):
    with pytest.raises(ValueError):
        log_forest_distance_matrix(K3, SHORTEST_PATH_FAMILY, 0.0)
    with pytest.raises(ValueError):
        ordinary_forest_distance_matrix(K3, -1.0)


def k2_closed_form(alpha):
    return math.log(math.e + alpha) * (alpha - 1) * math.log((1 + alpha) / alpha) / math.log(alpha)


def test_convergence_k2_shortest(K2):
    alphas = [1e-1, 1e-2, 1e-3]
    rep = convergence_report(K2, SHORTEST_PATH_FAMILY, alphas, shortest_path_matrix(K2))
    expected = [abs(k2_closed_form(a) - 1) for a in alphas]
    np.testing.assert_allclose(rep.errors, expected, rtol=1e-9)
    assert rep.monotone and rep.errors[-1] <= 0.02


def test_convergence_k3_resistance(K3):
    rep = convergence_report(K3, SHORTEST_PATH_FAMILY, [1e2, 1e3, 1e4], resistance_matrix(K3))
    assert rep.monotone and rep.errors[-1] <= 0.01


def test_convergence_triangle_wsp(triangle):
    from logforest.classical import weighted_shortest_path_matrix

    rep = convergence_report(triangle, WSP_FAMILY, [0.3, 0.1, 0.03], weighted_shortest_path_matrix(triangle))
    assert rep.monotone


def test_report_slack():
    from logforest.family import ConvergenceReport

    rep = ConvergenceReport((1, 2, 3), (1.0, 1.03, 0.5))
    assert not rep.decreasing() and rep.decreasing(1.05)
    assert rep.rows() == [(1, 1.0), (2, 1.03), (3, 0.5)]
