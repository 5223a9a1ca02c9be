"""Problem data containers and smooth objective oracles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class LinearSystem:
    """Measurements b = A x (+ noise) with an inequality tolerance sigma."""

    A: np.ndarray
    b: np.ndarray
    sigma: float = 0.0

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if A.ndim != 2:
            raise ValueError("A must be a 2-d array")
        if b.ndim != 1 or b.size != A.shape[0]:
            raise ValueError("b must be a vector with one entry per row of A")
        if not (np.isfinite(self.sigma) and self.sigma >= 0.0):
            raise ValueError("sigma must be finite and nonnegative")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class LogRegData:
    """Samples (rows) with binary outcomes in {-1, +1}."""

    samples: np.ndarray
    outcomes: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        outcomes = np.asarray(self.outcomes, dtype=float)
        if samples.ndim != 2:
            raise ValueError("samples must be a 2-d array")
        if outcomes.shape != (samples.shape[0],):
            raise ValueError("outcomes must be a vector with one entry per sample")
        if not np.all(np.isin(outcomes, (-1.0, 1.0))):
            raise ValueError("outcomes must be -1 or +1")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "outcomes", outcomes)


@dataclass(frozen=True)
class SmoothOracle:
    """Smooth part of a composite objective: x -> (value, gradient)."""

    value_grad: Callable[[np.ndarray], Tuple[float, np.ndarray]]
    lipschitz_hint: Optional[float] = None


def _softplus(z):
    # log(1 + exp(z)) without overflow for large |z|
    return np.maximum(z, 0.0) + np.log1p(np.exp(-np.abs(z)))


def _sigmoid(z):
    pos = z >= 0.0
    ez = np.exp(np.where(pos, -z, z))
    return np.where(pos, 1.0 / (1.0 + ez), ez / (1.0 + ez))


def logistic_value_grad(data, w):
    """Average logistic loss (1/m) sum log(1 + exp(-b_i a_i.w)) and its gradient."""
    w = np.asarray(w, dtype=float)
    A, b = data.samples, data.outcomes
    m = A.shape[0]
    z = -b * (A @ w)
    value = float(np.mean(_softplus(z)))
    grad = -(A.T @ (b * _sigmoid(z))) / m
    return value, grad


def logistic_oracle(data):
    m = data.samples.shape[0]
    hint = float(np.sum(data.samples**2)) / (4.0 * m)
    return SmoothOracle(
        value_grad=lambda w: logistic_value_grad(data, w),
        lipschitz_hint=hint,
    )


def lambda_max(data):
    """Smallest full-l1 weight at which w = 0 is already optimal."""
    m = data.samples.shape[0]
    return float(np.max(np.abs(data.samples.T @ data.outcomes))) / (2.0 * m)


def least_squares_oracle(system):
    """Oracle for f(x) = 0.5 * ||A x - b||^2."""
    A, b = system.A, system.b

    def value_grad(x):
        resid = A @ x - b
        return 0.5 * float(resid @ resid), A.T @ resid

    return SmoothOracle(value_grad=value_grad, lipschitz_hint=float(np.linalg.norm(A, 2) ** 2))


def residual_norms(system, x):
    """Return (||Ax - b||_2, ||Ax - b||_inf)."""
    resid = system.A @ np.asarray(x, dtype=float) - system.b
    return float(np.linalg.norm(resid)), float(np.max(np.abs(resid))) if resid.size else 0.0


def load_matrix(path):
    """Read a dense matrix from headerless CSV (one row per line)."""
    return np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)


def load_vector(path):
    """Read a vector from headerless CSV laid out as one row or one column."""
    arr = np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)
    if 1 not in arr.shape:
        raise ValueError(f"{path} does not hold a vector")
    return arr.ravel()


def save_vector(path, x):
    """Write a vector as one value per line with 17 significant digits."""
    np.savetxt(path, np.asarray(x, dtype=float), fmt="%.17g")
