"""Scalar sparsity penalties and their proximal maps.

Each penalty is a function phi on [0, inf) with phi(0) = 0 that is
nondecreasing, and the scalar prox problem is

    nu(t) = min_u  0.5 * (u - t)**2 + scale * phi(|u|).

Minimizers are found by evaluating a small closed-form candidate set per
penalty, so the returned point is a global minimizer up to floating-point
ties.  When several candidates attain the minimum within a tiny tolerance
the one with the largest magnitude is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Union

import numpy as np

# objective ties below this absolute gap are treated as exact ties
_TIE_TOL = 1e-12

_BISECT_TOL = 1e-12
_BISECT_MAX_ITERS = 200


@dataclass(frozen=True)
class L1:
    """phi(t) = t."""

    kind: ClassVar[str] = "l1"

    def value(self, t):
        return np.asarray(t, dtype=float).copy()

    def _prox_candidates(self, a, scale):
        return [np.maximum(a - scale, 0.0)]


@dataclass(frozen=True)
class Lq:
    """phi(t) = t**q for some q in (0, 1)."""

    q: float = 0.5

    kind: ClassVar[str] = "lq"

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise ValueError("q must lie in (0, 1)")

    def value(self, t):
        return np.power(np.asarray(t, dtype=float), self.q)

    def _prox_candidates(self, a, scale):
        if scale == 0.0:
            return [a.copy()]
        if self.q == 0.5:
            return [self._half_power_root(a, scale)]
        return [self._stationary_by_bisection(a, scale)]

    def _half_power_root(self, a, scale):
        # with u = v**2 the stationarity condition becomes
        # v**3 - a*v + scale/2 = 0; the largest real root is the candidate
        q0 = scale / 2.0
        discriminant = -4.0 * a**3 + 27.0 * q0**2
        has_root = (discriminant < 0.0) & (a > 0.0)
        safe = np.where(has_root, a, 1.0)
        arg = -(3.0 * q0) / (2.0 * safe) * np.sqrt(3.0 / safe)
        v = 2.0 * np.sqrt(safe / 3.0) * np.cos(np.arccos(np.clip(arg, -1.0, 1.0)) / 3.0)
        return np.where(has_root, v * v, np.nan)

    def _stationary_by_bisection(self, a, scale):
        # smallest point where the derivative of the prox objective can
        # vanish; below it the penalty slope dominates
        q = self.q
        u_infl = (scale * q * (1.0 - q)) ** (1.0 / (2.0 - q))

        def slope(u):
            with np.errstate(divide="ignore"):
                return u - a + scale * q * np.power(u, q - 1.0)

        exists = (u_infl < a) & (slope(np.full_like(a, u_infl)) <= 0.0)
        lo = np.full_like(a, u_infl)
        hi = np.maximum(a, u_infl)
        for _ in range(_BISECT_MAX_ITERS):
            mid = 0.5 * (lo + hi)
            neg = slope(mid) <= 0.0
            lo = np.where(neg, mid, lo)
            hi = np.where(neg, hi, mid)
            if np.all(hi - lo <= _BISECT_TOL * np.maximum(1.0, hi)):
                break
        root = 0.5 * (lo + hi)
        return np.where(exists, root, np.nan)


@dataclass(frozen=True)
class Log:
    """phi(t) = log(t + eps) - log(eps) for some eps > 0."""

    eps: float = 1e-3

    kind: ClassVar[str] = "log"

    def __post_init__(self):
        if not self.eps > 0.0:
            raise ValueError("eps must be positive")

    def value(self, t):
        return np.log1p(np.asarray(t, dtype=float) / self.eps)

    def _prox_candidates(self, a, scale):
        # stationary points solve u**2 + (eps - a)*u + (scale - eps*a) = 0
        discriminant = (a + self.eps) ** 2 - 4.0 * scale
        ok = discriminant >= 0.0
        sq = np.sqrt(np.where(ok, discriminant, np.nan))
        base = a - self.eps
        return [0.5 * (base + sq), 0.5 * (base - sq)]


@dataclass(frozen=True)
class CappedL1:
    """phi(t) = min(t, nu) for some nu > 0."""

    nu: float = 1e-2

    kind: ClassVar[str] = "capped_l1"

    def __post_init__(self):
        if not self.nu > 0.0:
            raise ValueError("nu must be positive")

    def value(self, t):
        return np.minimum(np.asarray(t, dtype=float), self.nu)

    def _prox_candidates(self, a, scale):
        return [
            np.clip(a - scale, 0.0, self.nu),
            np.full_like(a, self.nu),
            a.copy(),
        ]


@dataclass(frozen=True)
class MCP:
    """Minimax concave penalty with slope lam and width lam * alpha."""

    lam: float = 1.0
    alpha: float = 2.7

    kind: ClassVar[str] = "mcp"

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError("lam must be positive")
        if not self.alpha > 1.0:
            raise ValueError("alpha must exceed 1")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        flat = 0.5 * self.lam**2 * self.alpha
        return np.where(
            t < self.lam * self.alpha,
            self.lam * t - t**2 / (2.0 * self.alpha),
            flat,
        )

    def _prox_candidates(self, a, scale):
        knee = self.lam * self.alpha
        cands = [np.full_like(a, knee), a.copy()]
        denom = 1.0 - scale / self.alpha
        if denom > 0.0:
            cands.append(np.clip((a - scale * self.lam) / denom, 0.0, knee))
        return cands


@dataclass(frozen=True)
class SCAD:
    """Smoothly clipped absolute deviation with slope lam and knot lam * beta."""

    lam: float = 1.0
    beta: float = 3.7

    kind: ClassVar[str] = "scad"

    def __post_init__(self):
        if not self.lam > 0.0:
            raise ValueError("lam must be positive")
        if not self.beta > 1.0:
            raise ValueError("beta must exceed 1")

    def value(self, t):
        t = np.asarray(t, dtype=float)
        lam, beta = self.lam, self.beta
        middle = (-(t**2) + 2.0 * beta * lam * t - lam**2) / (2.0 * (beta - 1.0))
        flat = 0.5 * (beta + 1.0) * lam**2
        return np.where(t <= lam, lam * t, np.where(t < lam * beta, middle, flat))

    def _prox_candidates(self, a, scale):
        lam, beta = self.lam, self.beta
        cands = [
            np.clip(a - scale * lam, 0.0, lam),
            np.full_like(a, lam),
            np.full_like(a, lam * beta),
            a.copy(),
        ]
        denom = beta - 1.0 - scale
        if denom > 0.0:
            cands.append(
                np.clip(((beta - 1.0) * a - scale * beta * lam) / denom, lam, lam * beta)
            )
        return cands


Regularizer = Union[L1, Lq, Log, CappedL1, MCP, SCAD]

_KINDS = {cls.kind: cls for cls in (L1, Lq, Log, CappedL1, MCP, SCAD)}

REGULARIZER_KINDS = tuple(sorted(_KINDS))


def make_regularizer(kind, **params):
    """Build a regularizer from its kind string, e.g. make_regularizer("lq", q=0.5)."""
    try:
        cls = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown regularizer kind {kind!r}; choose from {REGULARIZER_KINDS}") from None
    try:
        return cls(**params)
    except TypeError:
        raise ValueError(f"invalid parameters {sorted(params)} for regularizer {kind!r}") from None


@dataclass(frozen=True)
class ScalarProxResult:
    """Minimizer u and optimal value of 0.5*(u-t)**2 + scale*phi(|u|)."""

    u: float
    value: float


def phi_value(reg, t):
    """Evaluate phi at nonnegative t (scalar or array)."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("phi is defined on nonnegative arguments")
    out = reg.value(arr)
    if np.isscalar(t) or arr.ndim == 0:
        return float(out)
    return out


def prox_array(reg, t, scale):
    """Vectorized scalar prox; returns (minimizers, optimal values).

    scale is the full multiplier on phi in the prox objective.  Candidates
    never exceed |t| in magnitude and the returned minimizer carries the
    sign of t.
    """
    t = np.asarray(t, dtype=float)
    scale = float(scale)
    if not scale >= 0.0:
        raise ValueError("scale must be nonnegative")
    a = np.abs(t)
    raw = reg._prox_candidates(a, scale)
    raw.append(np.zeros_like(a))
    cands = np.vstack(
        [np.clip(np.nan_to_num(c, nan=0.0, posinf=0.0, neginf=0.0), 0.0, a) for c in raw]
    )
    objective = 0.5 * (cands - a) ** 2 + scale * reg.value(cands)
    best = objective.min(axis=0)
    eligible = objective <= best + _TIE_TOL
    u = np.where(eligible, cands, -np.inf).max(axis=0)
    value = 0.5 * (u - a) ** 2 + scale * reg.value(u)
    return np.sign(t) * u, value


def scalar_prox(reg, t, scale):
    """Solve the scalar prox problem for one t."""
    u, value = prox_array(reg, np.array([t], dtype=float), scale)
    return ScalarProxResult(u=float(u[0]), value=float(value[0]))
