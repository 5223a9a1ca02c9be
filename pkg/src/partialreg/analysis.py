"""Desk-scale recovery analysis: restricted isometry constants, magnitude
lower bounds for local minimizers, null-space property falsifiers, and
stable-recovery error bounds.

Everything here is exact enumeration or randomized falsification sized for
small matrices.  The falsifiers never certify that a property holds; a
"not falsified" verdict only reports that no witness was found among the
sampled null-space directions, while a "falsified" verdict ships a witness
h that can be checked independently (h lies in the null space and makes
the defining inequality fail).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Tuple

import numpy as np

_SUBSET_CAP = 2_000_000
_DELTA_DIM_CAP = 14
_WITNESS_NULL_TOL = 1e-10


@dataclass(frozen=True)
class RICResult:
    order: int
    delta: float
    witness_support: Tuple[int, ...]


@dataclass(frozen=True)
class RIPCheck:
    order: int
    threshold: float
    holds: bool


@dataclass(frozen=True)
class NSPVerdict:
    falsified: bool
    samples: int
    min_margin: float
    witness: Optional[np.ndarray]
    witness_sets: Optional[tuple]
    note: str = ""


def null_space(A, tol=None):
    """Orthonormal basis of the null space of A, returned as columns."""
    A = np.asarray(A, dtype=float)
    _, s, vt = np.linalg.svd(A)
    if tol is None:
        tol = max(A.shape) * np.finfo(float).eps * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > tol))
    return vt[rank:].T.copy()


def ric_exact(A, k, max_subsets=_SUBSET_CAP):
    """Restricted isometry constant of order k by exhaustive enumeration.

    Fractional k is rounded up.  Refuses instead of sampling when the
    number of column subsets exceeds max_subsets, since a sampled value
    would not be the constant.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[1]
    order = int(math.ceil(k))
    if not 1 <= order <= n:
        raise ValueError("k must satisfy 1 <= ceil(k) <= n")
    count = math.comb(n, order)
    if count > max_subsets:
        raise ValueError(
            f"refusing to enumerate {count} subsets (cap {max_subsets}); "
            "exact computation is infeasible at this size"
        )
    delta = -np.inf
    witness = None
    for support in combinations(range(n), order):
        gram = A[:, support].T @ A[:, support]
        eigs = np.linalg.eigvalsh(gram)
        dev = max(eigs[-1] - 1.0, 1.0 - eigs[0])
        if dev > delta:
            delta = dev
            witness = support
    return RICResult(order=order, delta=float(delta), witness_support=witness)


def delta_lower_bound(system, max_dim=_DELTA_DIM_CAP):
    """Smallest nonzero magnitude that any non-sparse local minimizer can carry.

    Enumerates every column subset I with A_I of full column rank and
    A_I^T b != 0, solves the normal equations, and takes the smallest
    nonzero coefficient magnitude across all such subsets.  Returns +inf
    when no subset qualifies (the bound is then vacuous).
    """
    A, b = system.A, system.b
    m, n = A.shape
    if n > max_dim:
        raise ValueError(f"subset enumeration needs n <= {max_dim} columns, got {n}")
    atb_tol = 1e-14 * max(1.0, float(np.max(np.abs(b))) if b.size else 0.0)
    best = math.inf
    for size in range(1, min(m, n) + 1):
        for support in combinations(range(n), size):
            sub = A[:, support]
            if np.linalg.matrix_rank(sub) < size:
                continue
            rhs = sub.T @ b
            if np.max(np.abs(rhs)) <= atb_tol:
                continue
            coef = np.linalg.solve(sub.T @ sub, rhs)
            mags = np.abs(coef)
            nonzero = mags > 1e-12 * max(1.0, float(mags.max()))
            if not np.any(nonzero):
                continue
            best = min(best, float(mags[nonzero].min()))
    return best


def _certify_witness(A, h):
    if np.linalg.norm(A @ h) > _WITNESS_NULL_TOL * np.linalg.norm(h):
        raise RuntimeError("candidate witness is not in the null space")


def lnsp_falsify(A, x_star, r, phi, eps_ball=1e-3, n_samples=1000, seed=0):
    """Search random small null-space directions for a violation of the
    local null-space inequality at x_star.

    The inequality compares sum of phi(|h_i|) over the zero set of x_star
    against the worst completion drawn from the entries tied at the
    (r+1)-th largest magnitude.  A falsifying h is shrunk further toward 0
    while it keeps falsifying, so the witness also rules out smaller
    neighborhood radii down to its own norm.
    """
    A = np.asarray(A, dtype=float)
    x = np.asarray(x_star, dtype=float)
    n = x.size
    if not 0 <= r < n:
        raise ValueError("r must satisfy 0 <= r < n")
    nnz = int(np.count_nonzero(x))
    if nnz < r:
        raise ValueError("x_star must carry at least r nonzero entries")

    basis = null_space(A)
    if basis.shape[1] == 0:
        return NSPVerdict(False, 0, math.inf, None, None, note="null space is trivial")

    mags = np.abs(x)
    boundary = np.sort(mags)[::-1][r]
    zero_set = np.flatnonzero(x == 0.0)
    tied = np.flatnonzero(mags == boundary)
    small_pos = np.flatnonzero((mags > 0.0) & (mags < boundary))
    completion = nnz - r - small_pos.size
    if not 0 <= completion <= tied.size:
        raise RuntimeError("internal index-set accounting failed")

    def margin(h):
        lhs = float(np.sum(phi.value(np.abs(h[zero_set]))))
        tied_vals = np.sort(phi.value(np.abs(h[tied])))[::-1]
        rhs = float(np.sum(tied_vals[:completion]))
        rhs += float(np.sum(phi.value(np.abs(h[small_pos]))))
        return lhs - rhs

    def tied_witness(h):
        order = np.argsort(np.abs(h[tied]))[::-1]
        chosen = tied[order[:completion]]
        return tuple(sorted(np.concatenate([chosen, small_pos]).tolist()))

    rng = np.random.default_rng(seed)
    min_margin = math.inf
    for drawn in range(1, n_samples + 1):
        h = basis @ rng.standard_normal(basis.shape[1])
        norm = np.linalg.norm(h)
        if norm == 0.0:
            continue
        h *= eps_ball * rng.uniform(0.0, 1.0) / norm
        value = margin(h)
        min_margin = min(min_margin, value)
        if value <= 0.0:
            # push the witness toward the origin while it still violates
            for _ in range(6):
                shrunk = h / 10.0
                if margin(shrunk) <= 0.0:
                    h = shrunk
                else:
                    break
            _certify_witness(A, h)
            return NSPVerdict(True, drawn, min(min_margin, margin(h)), h, (tied_witness(h),))
    return NSPVerdict(False, n_samples, min_margin, None, None)


def gnsp_falsify(A, x_star, r, phi, n_samples=1000, seed=0):
    """Search null-space directions for a violation of the global
    null-space inequality at x_star.

    For a fixed h the worst pair of index sets is computable directly:
    take the smallest phi values on the zero set against the largest on
    the support, over every feasible size split summing to n - r.  Each
    sampled direction is tried at several length scales since the
    inequality quantifies over all nonzero null vectors.
    """
    A = np.asarray(A, dtype=float)
    x = np.asarray(x_star, dtype=float)
    n = x.size
    if not 0 <= r < n:
        raise ValueError("r must satisfy 0 <= r < n")

    basis = null_space(A)
    if basis.shape[1] == 0:
        return NSPVerdict(False, 0, math.inf, None, None, note="null space is trivial")

    zero_set = np.flatnonzero(x == 0.0)
    support = np.flatnonzero(x != 0.0)
    need = n - r

    def worst_split(h):
        vals0 = phi.value(np.abs(h[zero_set]))
        vals1 = phi.value(np.abs(h[support]))
        asc0 = np.argsort(vals0)
        desc1 = np.argsort(vals1)[::-1]
        pref0 = np.concatenate([[0.0], np.cumsum(vals0[asc0])])
        pref1 = np.concatenate([[0.0], np.cumsum(vals1[desc1])])
        best = math.inf
        best_sets = None
        lo = max(0, need - support.size)
        hi = min(zero_set.size, need)
        for j0 in range(lo, hi + 1):
            j1 = need - j0
            value = pref0[j0] - pref1[j1]
            if value < best:
                best = value
                best_sets = (
                    tuple(sorted(zero_set[asc0[:j0]].tolist())),
                    tuple(sorted(support[desc1[:j1]].tolist())),
                )
        return best, best_sets

    rng = np.random.default_rng(seed)
    min_margin = math.inf
    for drawn in range(1, n_samples + 1):
        direction = basis @ rng.standard_normal(basis.shape[1])
        norm = np.linalg.norm(direction)
        if norm == 0.0:
            continue
        direction /= norm
        for scale in (1e-2, 1.0, 1e2):
            h = scale * direction
            value, sets = worst_split(h)
            min_margin = min(min_margin, value)
            if value <= 0.0:
                _certify_witness(A, h)
                return NSPVerdict(True, drawn, min_margin, h, sets)
    return NSPVerdict(False, n_samples, min_margin, None, None)


def rip_order(kind, K, r):
    """Sparsity order whose isometry constant governs recovery of K-sparse
    vectors by the partially penalized model with parameter r."""
    if kind not in ("local", "global"):
        raise ValueError('kind must be "local" or "global"')
    if not (isinstance(K, (int, np.integer)) and K >= 1):
        raise ValueError("K must be a positive integer")
    if not (isinstance(r, (int, np.integer)) and 0 <= r <= K):
        raise ValueError("r must satisfy 0 <= r <= K")
    return K - r // 2 if kind == "local" else K + r // 2


def rip_threshold(q=1.0, gamma=None):
    """Isometry-constant threshold; 1/3 without gamma, else the scaled form."""
    if not 0.0 < q <= 1.0:
        raise ValueError("q must lie in (0, 1]")
    if gamma is None:
        return 1.0 / 3.0
    if not gamma > 1.0:
        raise ValueError("gamma must exceed 1")
    return float(((gamma - 1.0) ** (1.0 - 2.0 / q) + 1.0) ** -0.5)


def rip_condition(delta_value, kind, K, r, q=1.0, gamma=None):
    """Check a measured isometry constant against the recovery threshold.

    Without gamma the constant must have order K -/+ floor(r/2) and beat
    1/3; with gamma the order is scaled by gamma (which must make it an
    integer) and the threshold loosens accordingly.
    """
    order = rip_order(kind, K, r)
    if gamma is not None:
        scaled = gamma * order
        if abs(scaled - round(scaled)) > 1e-9:
            raise ValueError("gamma times the base order must be an integer")
        order = int(round(scaled))
    threshold = rip_threshold(q=q, gamma=gamma)
    return RIPCheck(order=order, threshold=threshold, holds=bool(delta_value < threshold))


def stable_error_bound(delta, sigma, k, r, x_tilde, branch="one_third", gamma=2.0):
    """Worst-case distance from any sigma-feasible x_tilde to the optimal
    solution of the partially penalized absolute-value model.

    branch "one_third" needs delta, the isometry constant of order
    k + ceil(r/2), below 1/3; branch "gamma" needs the constant of order
    gamma*(k + ceil(r/2)) below sqrt((gamma-1)/gamma).  The compressibility
    term uses the l1 mass of x_tilde beyond its k largest magnitudes.
    """
    x = np.asarray(x_tilde, dtype=float)
    n = x.size
    if not (isinstance(k, (int, np.integer)) and k >= 2):
        raise ValueError("k must be an integer >= 2")
    if not (isinstance(r, (int, np.integer)) and r >= 0):
        raise ValueError("r must be a nonnegative integer")
    if k + r > n - 1:
        raise ValueError("need k + r <= n - 1")
    if not sigma >= 0.0:
        raise ValueError("sigma must be nonnegative")
    t = k + math.ceil(r / 2)
    mags = np.sort(np.abs(x))[::-1]
    tail = float(np.sum(mags[k:]))
    if branch == "one_third":
        if not 0.0 <= delta < 1.0 / 3.0:
            raise ValueError("this branch needs 0 <= delta < 1/3")
        noise = 2.0 * math.sqrt(2.0 * (1.0 + delta)) * sigma / (1.0 - 3.0 * delta)
        factor = 2.0 * math.sqrt(2.0) * (2.0 * delta + math.sqrt((1.0 - 3.0 * delta) * delta))
        compress = factor / (1.0 - 3.0 * delta) * tail / math.sqrt(t)
    elif branch == "gamma":
        if not gamma > 1.0:
            raise ValueError("gamma must exceed 1")
        ceiling = math.sqrt((gamma - 1.0) / gamma)
        if not 0.0 <= delta < ceiling:
            raise ValueError("this branch needs 0 <= delta < sqrt((gamma-1)/gamma)")
        noise = 2.0 * math.sqrt(2.0 * (1.0 + delta)) * sigma / (
            1.0 - math.sqrt(gamma / (gamma - 1.0)) * delta
        )
        numer = math.sqrt(2.0) * delta + math.sqrt(gamma * (ceiling - delta) * delta)
        compress = (numer / (gamma * (ceiling - delta)) + 1.0) * 2.0 * tail / math.sqrt(t)
    else:
        raise ValueError('branch must be "one_third" or "gamma"')
    return noise + compress
