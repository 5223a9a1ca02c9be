"""Shared fixtures and reference oracles.

The oracles here are deliberately slow and independent of the library's
closed forms: dense grid search for the scalar prox, exhaustive subset
enumeration for the partial prox, and central differences for gradients.
"""

import itertools

import numpy as np
import pytest

from partialreg import LinearSystem, phi_value, scalar_prox


def prox_objective(reg, scale, t, u):
    """0.5 (u - t)^2 + scale * phi(|u|), vectorized in u."""
    u = np.asarray(u, dtype=float)
    return 0.5 * (u - t) ** 2 + scale * phi_value(reg, np.abs(u))


def _phi_breakpoints(reg):
    # kinks and curvature changes of each penalty, where a grid needs help
    kind = reg.kind
    if kind == "capped_l1":
        return [reg.nu]
    if kind == "mcp":
        return [reg.lam * reg.alpha]
    if kind == "scad":
        return [reg.lam, reg.lam * reg.beta]
    return []


def grid_prox_oracle(reg, t, scale, coarse=4001, refine=2001, rounds=2):
    """Best objective of min_u 0.5(u-t)^2 + scale*phi(|u|) by grid plus refinement.

    Searches [t - |t|, t + |t|], which always contains 0 and t and, by
    1-Lipschitz-ness of the prox, the minimizer.
    """
    lo, hi = t - abs(t), t + abs(t)
    pts = np.linspace(lo, hi, coarse)
    extras = [0.0, t]
    for bp in _phi_breakpoints(reg):
        for s in (bp, -bp):
            if lo <= s <= hi:
                extras.append(s)
    pts = np.concatenate([pts, np.asarray(extras)])
    vals = prox_objective(reg, scale, t, pts)
    best = pts[np.argmin(vals)]
    width = (hi - lo) / (coarse - 1) if coarse > 1 else 1e-6
    for _ in range(rounds):
        local = np.linspace(best - width, best + width, refine)
        local = np.clip(local, lo, hi)
        vals = prox_objective(reg, scale, t, local)
        best = local[np.argmin(vals)]
        width = 2.0 * width / (refine - 1)
    return float(prox_objective(reg, scale, t, best)), float(best)


def subset_prox_objective(preg, a, scale):
    """Exhaustive reference for the partial prox objective.

    Tries every assignment of n-r coordinates to the penalized group;
    penalized coordinates pay their scalar prox value, kept coordinates
    stay at a_i for free.  Returns the best total.
    """
    a = np.asarray(a, dtype=float)
    n = a.size
    m = n - preg.r
    if m <= 0:
        return 0.0
    per_coord = np.array(
        [scalar_prox(preg.phi, float(ai), scale).value for ai in a]
    )
    best = np.inf
    for subset in itertools.combinations(range(n), m):
        total = per_coord[list(subset)].sum()
        if total < best:
            best = total
    return float(best)


def partial_prox_objective(preg, a, scale, x):
    """Objective value 0.5||x-a||^2 + scale * sum of phi over the n-r smallest |x|."""
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    mags = np.sort(np.abs(x))[::-1]
    tail = mags[preg.r:]
    return float(0.5 * np.sum((x - a) ** 2) + scale * np.sum(phi_value(preg.phi, tail)))


def central_diff_grad(fun, x, h=1e-5):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        g[i] = (fun(x + step) - fun(x - step)) / (2.0 * h)
    return g


def low_coherence_frame(m=10, n=16, target=0.26, iters=400, seed=11):
    """Deterministic unit-column frame with small worst pair correlation.

    Alternating projection between the set of rank-m Gram matrices and the
    set of unit-diagonal matrices with off-diagonal entries clipped to the
    target coherence.
    """
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, n))
    A /= np.linalg.norm(A, axis=0)
    G = A.T @ A
    for _ in range(iters):
        off = G - np.diag(np.diag(G))
        off = np.clip(off, -target, target)
        G = off + np.eye(n)
        w, V = np.linalg.eigh(G)
        w[:-m] = 0.0
        G = (V * w) @ V.T
        d = np.sqrt(np.clip(np.diag(G), 1e-12, None))
        G = G / np.outer(d, d)
    w, V = np.linalg.eigh(G)
    w = np.clip(w[-m:], 0.0, None)
    A = (V[:, -m:] * np.sqrt(w)).T
    A /= np.linalg.norm(A, axis=0)
    return A


@pytest.fixture
def five_var_system():
    # 4x5 consistent system whose sparsest solution differs from the
    # minimum-l1 solution; the general solution is x(t) = (t,t,1-t,2-t,3-t)
    A = np.array(
        [
            [1.0, -1.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, 0.0, 1.0],
        ]
    )
    b = np.array([0.0, 1.0, 2.0, 3.0])
    return LinearSystem(A=A, b=b)


X_SPARSE = np.array([0.0, 0.0, 1.0, 2.0, 3.0])
X_FULL_L1 = np.array([1.0, 1.0, 0.0, 1.0, 2.0])


@pytest.fixture
def x_sparse():
    return X_SPARSE.copy()


@pytest.fixture
def x_full_l1():
    return X_FULL_L1.copy()
