"""Nonmonotone proximal gradient method for smooth + partial-penalty objectives.

Minimizes F(x) = f(x) + weight * sum_{i>r} phi(|x|_[i]) where f is given by
a SmoothOracle.  Each iteration starts from a spectral (Barzilai-Borwein)
curvature estimate and doubles it until the candidate decreases the maximum
of the last window+1 accepted objective values by a quadratic margin.
Termination uses a verifiable surrogate for the distance to stationarity
built from two consecutive gradients and the accepted curvature.
"""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .partial_prox import partial_prox, phi_partial_value

# backtracking safety cap; the doubling loop terminates long before this
# whenever f has a locally Lipschitz gradient
_MAX_BACKTRACKS = 200


@dataclass(frozen=True)
class NPGConfig:
    l_min: float = 1e-8
    l_max: float = 1e8
    tau: float = 2.0
    c: float = 1e-4
    window: int = 5
    eps: float = 1e-5
    max_iters: int = 50000
    l0: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.l_min < self.l_max:
            raise ValueError("need 0 < l_min < l_max")
        if not self.tau > 1.0:
            raise ValueError("tau must exceed 1")
        if not self.c > 0.0:
            raise ValueError("c must be positive")
        if self.window < 0:
            raise ValueError("window must be nonnegative")
        if not self.eps >= 0.0:
            raise ValueError("eps must be nonnegative")


@dataclass
class NPGTrace:
    """Per accepted step: objective, accepted curvature, step norm, gap."""

    f_initial: float
    f_values: List[float] = field(default_factory=list)
    l_bars: List[float] = field(default_factory=list)
    step_norms: List[float] = field(default_factory=list)
    gaps: List[float] = field(default_factory=list)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["iter", "F", "L_bar", "step_norm", "gap"])
            writer.writerow([0, "%.17g" % self.f_initial, "", "", ""])
            rows = zip(self.f_values, self.l_bars, self.step_norms, self.gaps)
            for i, (f, l, s, g) in enumerate(rows, start=1):
                writer.writerow([i] + ["%.17g" % v for v in (f, l, s, g)])


@dataclass
class NPGResult:
    x: np.ndarray
    status: str
    iterations: int
    gap: float
    f_final: float
    trace: NPGTrace


def _clamp(value, config):
    return min(max(value, config.l_min), config.l_max)


def bb_initial_step(x_prev, x_curr, grad_prev, grad_curr, config):
    """Spectral curvature estimate <s, y>/<s, s> clamped to [l_min, l_max]."""
    s = x_curr - x_prev
    y = grad_curr - grad_prev
    ss = float(s @ s)
    if not np.isfinite(ss) or ss == 0.0:
        return _clamp(config.l0, config)
    ratio = float(s @ y) / ss
    if not np.isfinite(ratio):
        return _clamp(config.l0, config)
    return _clamp(ratio, config)


def accept_test(f_history, f_new, c, step_sq):
    """Nonmonotone descent: f_new <= max(recent) - (c/2) * ||step||^2."""
    return f_new <= max(f_history) - 0.5 * c * step_sq


def stationarity_gap(grad_prev, grad_curr, l_bar, x_prev, x_curr):
    """Computable bound on the distance from 0 to the composite subdifferential.

    l_bar must be the accepted curvature of the step that produced x_curr
    from x_prev.
    """
    return float(np.linalg.norm(grad_prev - grad_curr + l_bar * (x_curr - x_prev)))


def npg_solve(oracle, preg, x0, config=None):
    """Run the nonmonotone proximal gradient method from x0.

    Returns an NPGResult whose status is "converged" (gap <= eps),
    "max_iters", or "failed" (backtracking could not find an acceptable
    step, e.g. because the objective is not locally smooth).
    """
    cfg = config if config is not None else NPGConfig()
    x = np.array(x0, dtype=float, copy=True)
    f, g = oracle.value_grad(x)
    if not np.isfinite(f):
        raise ValueError("objective is not finite at the starting point")
    F = f + phi_partial_value(preg, x)
    history = deque([F], maxlen=cfg.window + 1)
    trace = NPGTrace(f_initial=F)
    x_prev = None
    g_prev = None
    status = "max_iters"
    gap = np.inf

    for _ in range(cfg.max_iters):
        if x_prev is None:
            L = _clamp(cfg.l0, cfg)
        else:
            L = bb_initial_step(x_prev, x, g_prev, g, cfg)
        accepted = False
        for _ in range(_MAX_BACKTRACKS):
            base = x - g / L
            if preg.weight == 0.0:
                x_new = base
            else:
                x_new = partial_prox(preg, base, preg.weight / L).solution
            f_new, g_new = oracle.value_grad(x_new)
            step = x_new - x
            step_sq = float(step @ step)
            F_new = f_new + phi_partial_value(preg, x_new)
            if np.isfinite(F_new) and accept_test(history, F_new, cfg.c, step_sq):
                accepted = True
                break
            L *= cfg.tau
        if not accepted:
            status = "failed"
            break
        gap = stationarity_gap(g, g_new, L, x, x_new)
        trace.f_values.append(F_new)
        trace.l_bars.append(L)
        trace.step_norms.append(step_sq**0.5)
        trace.gaps.append(gap)
        x_prev, g_prev = x, g
        x, g, F = x_new, g_new, F_new
        history.append(F_new)
        if gap <= cfg.eps:
            status = "converged"
            break

    return NPGResult(
        x=x,
        status=status,
        iterations=len(trace.f_values),
        gap=float(gap),
        f_final=float(F),
        trace=trace,
    )
