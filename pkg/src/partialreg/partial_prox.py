"""Proximal map of the partial penalty sum_{i>r} phi(|x|_[i]).

|x|_[i] denotes the i-th largest entry of |x|, so the penalty leaves the r
largest magnitudes untouched and charges phi on the n - r smallest ones.
The prox splits into keeping the r largest |a_i| as they are and applying
the scalar prox to the rest; ties at the selection boundary keep the
larger-magnitude slots with the smaller indices among the penalized set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .regularizers import Regularizer, prox_array


@dataclass(frozen=True)
class PartialRegularizer:
    """Penalty weight * sum_{i>r} phi(|x|_[i]).

    weight = 0 is allowed and turns the penalty off entirely.
    """

    phi: Regularizer
    r: int
    weight: float = 1.0

    def __post_init__(self):
        if not isinstance(self.r, (int, np.integer)) or self.r < 0:
            raise ValueError("r must be a nonnegative integer")
        if not (np.isfinite(self.weight) and self.weight >= 0.0):
            raise ValueError("weight must be finite and nonnegative")


@dataclass(frozen=True)
class ProxSelection:
    """Result of the partial prox: which indices were kept or shrunk."""

    kept_indices: np.ndarray
    shrunk_indices: np.ndarray
    solution: np.ndarray


def phi_partial_value(preg, x):
    """Evaluate weight * sum_{i>r} phi(|x|_[i])."""
    x = np.asarray(x, dtype=float)
    if preg.weight == 0.0 or preg.r >= x.size:
        return 0.0
    mags = np.sort(np.abs(x))[::-1]
    return float(preg.weight * np.sum(preg.phi.value(mags[preg.r :])))


def partial_prox(preg, a, scale):
    """Minimize 0.5*||x - a||^2 + scale * sum_{i>r} phi(|x|_[i]).

    scale is the full multiplier on phi (any penalty weight and step size
    already folded in by the caller; preg.weight is not applied here).
    The n - r smallest |a_i| are shrunk through the scalar prox and the
    rest are kept, which is optimal for this objective.
    """
    a = np.asarray(a, dtype=float)
    n = a.size
    if not float(scale) >= 0.0:
        raise ValueError("scale must be nonnegative")
    if preg.r >= n:
        return ProxSelection(
            kept_indices=np.arange(n),
            shrunk_indices=np.empty(0, dtype=int),
            solution=a.copy(),
        )
    m = n - preg.r
    mags = np.abs(a)
    boundary = np.partition(mags, m - 1)[m - 1]
    below = np.flatnonzero(mags < boundary)
    at_boundary = np.flatnonzero(mags == boundary)[: m - below.size]
    shrunk = np.sort(np.concatenate([below, at_boundary]))
    kept = np.setdiff1d(np.arange(n), shrunk, assume_unique=True)
    u, _ = prox_array(preg.phi, a[shrunk], scale)
    solution = a.copy()
    solution[shrunk] = u
    return ProxSelection(kept_indices=kept, shrunk_indices=shrunk, solution=solution)
