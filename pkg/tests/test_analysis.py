import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from partialreg import (
    L1,
    LinearSystem,
    delta_lower_bound,
    gnsp_falsify,
    lnsp_falsify,
    null_space,
    ric_exact,
    rip_condition,
    rip_order,
    rip_threshold,
    stable_error_bound,
)
from conftest import X_FULL_L1, X_SPARSE, low_coherence_frame


def test_null_space_five_var(five_var_system):
    N = null_space(five_var_system.A)
    assert N.shape == (5, 1)
    direction = N[:, 0] / N[0, 0]
    assert_allclose(direction, [1.0, 1.0, -1.0, -1.0, -1.0], atol=1e-12)


def test_ric_orthonormal_columns():
    rng = np.random.default_rng(0)
    Q, _ = np.linalg.qr(rng.standard_normal((12, 5)))
    for k in (1, 2, 3):
        assert ric_exact(Q, k).delta <= 1e-10


def test_ric_diagonal():
    A = np.diag([1.0, 0.5])
    res = ric_exact(A, 1)
    assert_allclose(res.delta, 0.75, atol=1e-12)
    assert list(res.witness_support) == [1]


def test_ric_monotone_in_order():
    rng = np.random.default_rng(1)
    for _ in range(10):
        A = rng.standard_normal((8, 12)) / math.sqrt(8)
        deltas = [ric_exact(A, k).delta for k in (1, 2, 3, 4)]
        assert all(d2 >= d1 - 1e-12 for d1, d2 in zip(deltas, deltas[1:]))


def test_ric_fractional_order_ceils():
    A = np.diag([1.0, 0.5])
    assert ric_exact(A, 1.2).delta == ric_exact(A, 2).delta


def test_ric_refuses_huge_enumerations():
    A = np.zeros((10, 60))
    with pytest.raises(ValueError):
        ric_exact(A, 12, max_subsets=1000)


def test_delta_lower_bound_identity():
    system = LinearSystem(A=np.eye(2), b=np.array([2.0, 3.0]))
    assert delta_lower_bound(system) == 2.0


def test_delta_lower_bound_skips_orthogonal_subsets():
    # the {1} subset has A_I' b = 0 and must not contribute a zero
    system = LinearSystem(A=np.eye(2), b=np.array([2.0, 0.0]))
    assert delta_lower_bound(system) == 2.0


def test_delta_lower_bound_five_var(five_var_system):
    assert_allclose(delta_lower_bound(five_var_system), 0.5, atol=1e-12)


def test_delta_lower_bound_zero_rhs_is_inf():
    system = LinearSystem(A=np.eye(2), b=np.zeros(2))
    assert delta_lower_bound(system) == math.inf


def test_lnsp_clears_sparse_point(five_var_system):
    verdict = lnsp_falsify(five_var_system.A, X_SPARSE, 2, L1(), n_samples=400, seed=0)
    assert not verdict.falsified
    assert verdict.min_margin > 0.0
    assert verdict.witness is None


def test_lnsp_falsifies_full_l1_point(five_var_system):
    verdict = lnsp_falsify(five_var_system.A, X_FULL_L1, 2, L1(), n_samples=400, seed=0)
    assert verdict.falsified
    assert verdict.min_margin < 0.0
    h = verdict.witness
    assert h is not None
    assert np.linalg.norm(five_var_system.A @ h) <= 1e-10 * np.linalg.norm(h)


def test_gnsp_falsified_for_five_var(five_var_system):
    # the global condition fails for this matrix at r=2 no matter the point
    for point in (X_SPARSE, X_FULL_L1):
        verdict = gnsp_falsify(five_var_system.A, point, 2, L1(), n_samples=400, seed=0)
        assert verdict.falsified
        assert verdict.min_margin < 0.0
        h = verdict.witness
        assert np.linalg.norm(five_var_system.A @ h) <= 1e-10 * np.linalg.norm(h)


def test_gnsp_holds_on_low_coherence_frame():
    A = low_coherence_frame()
    x = np.zeros(16)
    x[[2, 9]] = (1.5, -2.0)
    for r in (0, 1):
        verdict = gnsp_falsify(A, x, r, L1(), n_samples=800, seed=1)
        assert not verdict.falsified
        assert verdict.min_margin > 0.0


def test_low_coherence_frame_quality():
    A = low_coherence_frame()
    assert A.shape == (10, 16)
    assert_allclose(np.linalg.norm(A, axis=0), np.ones(16), atol=1e-9)
    assert ric_exact(A, 2).delta < 1.0 / 3.0


def test_rip_order_values():
    assert rip_order("local", 6, 4) == 4
    assert rip_order("local", 6, 5) == 4
    assert rip_order("global", 6, 4) == 8
    assert rip_order("global", 6, 5) == 8
    with pytest.raises(ValueError):
        rip_order("sideways", 6, 2)
    with pytest.raises(ValueError):
        rip_order("local", 4, 5)


def test_rip_threshold_values():
    assert rip_threshold() == 1.0 / 3.0
    assert_allclose(rip_threshold(q=1.0, gamma=2.0), 1.0 / math.sqrt(2.0), rtol=1e-15)
    assert_allclose(rip_threshold(q=0.5, gamma=2.0), 1.0 / math.sqrt(2.0), rtol=1e-15)
    assert_allclose(rip_threshold(q=0.5, gamma=5.0), 0.9922778767136677, rtol=1e-15)
    with pytest.raises(ValueError):
        rip_threshold(q=0.0)
    with pytest.raises(ValueError):
        rip_threshold(gamma=1.0)


def test_rip_condition_integrality():
    check = rip_condition(0.2, "global", 4, 2, gamma=2.0)
    assert check.order == 10
    assert check.holds
    with pytest.raises(ValueError):
        rip_condition(0.2, "global", 4, 2, gamma=1.3)


def test_rip_condition_boundary():
    assert rip_condition(0.33, "local", 4, 0).holds
    assert not rip_condition(1.0 / 3.0, "local", 4, 0).holds


def test_stable_bound_sparse_point_noise_term_only():
    x = np.zeros(12)
    x[:2] = (3.0, -1.0)
    delta, sigma = 0.25, 0.1
    bound = stable_error_bound(delta, sigma, 2, 0, x)
    expected = 2.0 * math.sqrt(2.0 * 1.25) * sigma / 0.25
    assert_allclose(bound, expected, rtol=1e-15)


def test_stable_bound_monotone_in_delta_and_sigma():
    rng = np.random.default_rng(5)
    x = rng.standard_normal(20)
    bounds = [stable_error_bound(d, 0.1, 3, 2, x) for d in (0.0, 0.1, 0.2, 0.3)]
    assert all(b2 > b1 for b1, b2 in zip(bounds, bounds[1:]))
    bounds = [stable_error_bound(0.2, s, 3, 2, x) for s in (0.0, 0.1, 0.2)]
    assert all(b2 > b1 for b1, b2 in zip(bounds, bounds[1:]))


def test_stable_bound_gamma_branch():
    x = np.zeros(12)
    x[:2] = (1.0, 1.0)
    # gamma=2: threshold sqrt(1/2); pick delta just below
    bound = stable_error_bound(0.5, 0.1, 2, 2, x, branch="gamma", gamma=2.0)
    noise = 2.0 * math.sqrt(2.0 * 1.5) * 0.1 / (1.0 - math.sqrt(2.0) * 0.5)
    assert_allclose(bound, noise, rtol=1e-15)


def test_stable_bound_domain_errors():
    x = np.zeros(12)
    x[0] = 1.0
    with pytest.raises(ValueError):
        stable_error_bound(0.34, 0.1, 2, 0, x)
    with pytest.raises(ValueError):
        stable_error_bound(0.8, 0.1, 2, 0, x, branch="gamma", gamma=2.0)
    with pytest.raises(ValueError):
        stable_error_bound(0.1, 0.1, 1, 0, x)
    with pytest.raises(ValueError):
        stable_error_bound(0.1, 0.1, 8, 4, x)
    with pytest.raises(ValueError):
        stable_error_bound(0.1, -0.1, 2, 0, x)
