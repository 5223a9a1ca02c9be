import numpy as np
import pytest
from numpy.testing import assert_allclose

from partialreg import (
    L1,
    Lq,
    PartialRegularizer,
    make_regularizer,
    partial_prox,
    phi_partial_value,
    prox_array,
)
from conftest import partial_prox_objective, subset_prox_objective


def test_partial_value_hand_example():
    preg = PartialRegularizer(L1(), 1, 2.0)
    # sorted magnitudes (3, 2, 1); the top one is free, tail sums to 3
    assert phi_partial_value(preg, np.array([3.0, -1.0, 2.0])) == 6.0


def test_partial_value_r_zero_is_full_penalty():
    preg = PartialRegularizer(L1(), 0, 1.0)
    x = np.array([1.0, -2.0, 0.5])
    assert phi_partial_value(preg, x) == 3.5


def test_partial_value_r_at_least_n_is_zero():
    preg = PartialRegularizer(L1(), 3, 1.0)
    assert phi_partial_value(preg, np.array([4.0, 5.0, 6.0])) == 0.0
    preg5 = PartialRegularizer(L1(), 5, 1.0)
    assert phi_partial_value(preg5, np.array([4.0, 5.0, 6.0])) == 0.0


def test_validation():
    with pytest.raises(ValueError):
        PartialRegularizer(L1(), -1, 1.0)
    with pytest.raises(ValueError):
        PartialRegularizer(L1(), 2, -0.5)


def test_selection_hand_example():
    preg = PartialRegularizer(L1(), 2, 1.0)
    sel = partial_prox(preg, np.array([5.0, 1.0, -3.0, 2.0]), 0.5)
    assert list(sel.shrunk_indices) == [1, 3]
    assert list(sel.kept_indices) == [0, 2]
    assert_allclose(sel.solution[[0, 2]], [5.0, -3.0])
    assert_allclose(sel.solution[[1, 3]], [0.5, 1.5])


def test_selection_tie_prefers_smaller_index():
    preg = PartialRegularizer(L1(), 1, 1.0)
    sel = partial_prox(preg, np.array([1.0, -1.0, 1.0]), 0.25)
    assert list(sel.shrunk_indices) == [0, 1]
    assert list(sel.kept_indices) == [2]


def test_r_zero_matches_plain_prox():
    reg = make_regularizer("scad")
    preg = PartialRegularizer(reg, 0, 1.0)
    rng = np.random.default_rng(5)
    a = rng.uniform(-4.0, 4.0, 9)
    sel = partial_prox(preg, a, 0.8)
    u, _ = prox_array(reg, a, 0.8)
    assert_allclose(sel.solution, u, atol=0.0)
    assert sel.kept_indices.size == 0


def test_r_at_least_n_is_identity():
    preg = PartialRegularizer(L1(), 6, 1.0)
    a = np.array([0.3, -2.0, 1.0, 0.0, 4.0])
    sel = partial_prox(preg, a, 2.0)
    assert_allclose(sel.solution, a, atol=0.0)
    assert sel.shrunk_indices.size == 0


def test_sparse_input_is_fixed_point():
    # with nnz(a) <= r the penalized slots hold exact zeros, so nothing moves
    preg = PartialRegularizer(Lq(q=0.5), 2, 1.0)
    a = np.array([0.0, 3.0, 0.0, -1.5, 0.0])
    sel = partial_prox(preg, a, 1.0)
    assert_allclose(sel.solution, a, atol=0.0)


@pytest.mark.parametrize("kind", ["l1", "lq", "log", "capped_l1", "mcp", "scad"])
def test_objective_matches_subset_enumeration(kind):
    reg = make_regularizer(kind)
    rng = np.random.default_rng(17)
    for n in (2, 4, 6):
        for r in range(n):
            preg = PartialRegularizer(reg, r, 1.0)
            for _ in range(6):
                a = rng.uniform(-5.0, 5.0, n)
                scale = float(rng.uniform(0.1, 3.0))
                sel = partial_prox(preg, a, scale)
                ours = partial_prox_objective(preg, a, scale, sel.solution)
                ref = subset_prox_objective(preg, a, scale)
                assert abs(ours - ref) <= 1e-10


def test_permutation_equivariance():
    preg = PartialRegularizer(make_regularizer("mcp"), 3, 1.0)
    rng = np.random.default_rng(23)
    a = rng.uniform(-4.0, 4.0, 8)
    perm = rng.permutation(8)
    base = partial_prox(preg, a, 0.7).solution
    permuted = partial_prox(preg, a[perm], 0.7).solution
    assert_allclose(permuted, base[perm], atol=0.0)


def test_sign_equivariance():
    preg = PartialRegularizer(make_regularizer("log"), 2, 1.0)
    rng = np.random.default_rng(29)
    a = rng.uniform(-4.0, 4.0, 7)
    signs = rng.choice([-1.0, 1.0], 7)
    base = partial_prox(preg, a, 1.1).solution
    flipped = partial_prox(preg, a * signs, 1.1).solution
    assert_allclose(flipped, base * signs, atol=0.0)


def test_weight_not_applied_inside_prox():
    # the caller folds the weight into scale; the struct's weight only
    # matters for phi_partial_value
    a = np.array([2.0, -1.0, 0.5])
    heavy = PartialRegularizer(L1(), 1, 2.0)
    light = PartialRegularizer(L1(), 1, 1.0)
    assert_allclose(
        partial_prox(heavy, a, 0.6).solution,
        partial_prox(light, a, 0.6).solution,
        atol=0.0,
    )
