"""Feasible augmented Lagrangian methods for partially penalized recovery.

Solves min weight * sum_{i>r} phi(|x|_[i]) subject to Ax = b (noiseless) or
||Ax - b|| <= sigma (noisy) by classical augmented Lagrangian outer
iterations whose subproblems are handled by the nonmonotone proximal
gradient method.  A feasibility safeguard keeps every subproblem start at
an augmented Lagrangian value no larger than a fixed bound Upsilon by
restarting from a feasible point whenever the current iterate exceeds it,
which is what keeps the method from chasing unbounded penalty values.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field, replace
from typing import List, Optional, Union

import numpy as np

from .npg import NPGConfig, npg_solve
from .objectives import SmoothOracle
from .partial_prox import phi_partial_value


@dataclass(frozen=True)
class FALConfig:
    mu0: Union[float, np.ndarray, None] = None
    rho0: float = 1.0
    gamma: float = 5.0
    eta: float = 0.25
    theta: float = 1e-2
    eps0: float = 1.0
    eps_decay: float = 0.1
    eps_floor: float = 1e-5
    eps_target: float = 1e-4
    feas_tol: float = 1e-5
    upsilon: Optional[float] = None
    outer_max: int = 100
    rho_cap: float = 1e14
    npg: NPGConfig = field(default_factory=NPGConfig)

    def __post_init__(self):
        if not self.rho0 > 0.0:
            raise ValueError("rho0 must be positive")
        if not self.gamma > 1.0:
            raise ValueError("gamma must exceed 1")
        if not 0.0 < self.eta < 1.0:
            raise ValueError("eta must lie in (0, 1)")
        if not self.theta > 0.0:
            raise ValueError("theta must be positive")
        if not 0.0 < self.eps_decay < 1.0:
            raise ValueError("eps_decay must lie in (0, 1)")
        if min(self.eps0, self.eps_floor, self.eps_target, self.feas_tol) <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.outer_max < 1:
            raise ValueError("outer_max must be at least 1")


@dataclass
class FALState:
    """Snapshot of one outer iteration."""

    outer: int
    eps: float
    rho: float
    mu_norm: float
    al_value: float
    infeasibility: float
    npg_iterations: int
    npg_status: str


@dataclass
class SolveResult:
    x: np.ndarray
    status: str
    objective: float
    infeasibility: float
    upsilon: float
    outer_iterations: int
    npg_iterations: int
    wall_time: float
    states: List[FALState]

    def summary_header(self):
        return "status,objective,infeasibility,outer_iterations,npg_iterations,wall_time,x"

    def summary_line(self):
        packed = ";".join("%.17g" % v for v in self.x)
        row = [
            self.status,
            "%.17g" % self.objective,
            "%.17g" % self.infeasibility,
            str(self.outer_iterations),
            str(self.npg_iterations),
            "%.17g" % self.wall_time,
            packed,
        ]
        buf = io.StringIO()
        csv.writer(buf, lineterminator="").writerow(row)
        return buf.getvalue()


def al_noiseless(system, x, mu, rho):
    """Value and gradient of mu.(Ax - b) + (rho/2) ||Ax - b||^2."""
    resid = system.A @ x - system.b
    value = float(mu @ resid) + 0.5 * rho * float(resid @ resid)
    grad = system.A.T @ (mu + rho * resid)
    return value, grad


def al_noisy(system, x, mu, rho):
    """Value and gradient of ([mu + rho (||Ax-b||^2 - sigma^2)]_+^2 - mu^2) / (2 rho)."""
    resid = system.A @ x - system.b
    inner = mu + rho * (float(resid @ resid) - system.sigma**2)
    plus = max(inner, 0.0)
    value = (plus**2 - mu**2) / (2.0 * rho)
    grad = (2.0 * plus) * (system.A.T @ resid)
    return value, grad


def _feasible_start(system):
    # minimum-norm least-squares solution
    return np.linalg.lstsq(system.A, system.b, rcond=None)[0]


def _solve(system, preg, cfg, x0, x_feas, noisy):
    t_start = time.perf_counter()
    A, b, sigma = system.A, system.b, system.sigma
    m, n = A.shape

    if x_feas is None:
        x_feas = _feasible_start(system)
    else:
        x_feas = np.asarray(x_feas, dtype=float)
    resid_feas = A @ x_feas - b
    norm_feas = float(np.linalg.norm(resid_feas))
    if noisy:
        if norm_feas > sigma + cfg.feas_tol:
            raise ValueError("x_feas violates ||Ax - b|| <= sigma")
        # worst-case slip of the shifted penalty at the safeguard point
        feas_slip = max(norm_feas**2 - sigma**2, 0.0)
    else:
        if sigma != 0.0:
            raise ValueError("system.sigma is positive; use fal_noisy")
        if float(np.max(np.abs(resid_feas))) > cfg.feas_tol:
            raise ValueError("x_feas does not satisfy Ax = b")
        feas_slip = norm_feas

    x = np.zeros(n) if x0 is None else np.array(x0, dtype=float, copy=True)

    if noisy:
        mu = 0.0 if cfg.mu0 is None else float(cfg.mu0)
        if mu < 0.0:
            raise ValueError("mu0 must be nonnegative for the noisy model")
    else:
        if cfg.mu0 is None:
            mu = np.zeros(m)
        elif np.ndim(cfg.mu0) == 0:
            mu = np.full(m, float(cfg.mu0))
        else:
            mu = np.asarray(cfg.mu0, dtype=float)
    rho = cfg.rho0

    al = al_noisy if noisy else al_noiseless

    def phi(z):
        return phi_partial_value(preg, z)

    def merit(z, mu_, rho_):
        return al(system, z, mu_, rho_)[0] + phi(z)

    def gauge_inf(z):
        worst = float(np.max(np.abs(A @ z - b)))
        return max(worst - sigma, 0.0) if noisy else worst

    def gauge_two(z):
        two = float(np.linalg.norm(A @ z - b))
        return max(two - sigma, 0.0) if noisy else two

    upsilon = cfg.upsilon
    if upsilon is None:
        upsilon = max(phi(x_feas), merit(x, mu, rho))

    states: List[FALState] = []
    total_npg = 0
    status = "outer_max"
    eps_k = cfg.eps0
    gauge_prev = gauge_two(x)

    for k in range(cfg.outer_max):
        # tolerance tightens ahead of every subsolve, the first included:
        # solving subproblem 0 only to eps0 lets crude multiplier estimates
        # lock in a poor sparsity pattern before feasibility pressure builds
        eps_k = max(cfg.eps_decay * eps_k, cfg.eps_floor)

        oracle = SmoothOracle(
            value_grad=lambda z, mu_=mu, rho_=rho: al(system, z, mu_, rho_)
        )
        x_init = x_feas if merit(x, mu, rho) > upsilon else x
        sub = npg_solve(oracle, preg, x_init, replace(cfg.npg, eps=eps_k))
        total_npg += sub.iterations
        if sub.status == "failed":
            x = sub.x
            status = "subsolver_failed"
            break
        x_next = sub.x

        mu_norm = float(np.linalg.norm(np.atleast_1d(mu)))
        al_value = merit(x_next, mu, rho)
        slack = 1e-6 * max(1.0, abs(upsilon)) + mu_norm * feas_slip + 0.5 * rho * feas_slip**2
        if al_value > upsilon + slack:
            raise RuntimeError("augmented Lagrangian value escaped its bound")

        resid = A @ x_next - b
        if noisy:
            mu = max(mu + rho * (float(resid @ resid) - sigma**2), 0.0)
            mu_pow = mu ** (1.0 + cfg.theta)
        else:
            mu = mu + rho * resid
            mu_pow = float(np.linalg.norm(mu)) ** (1.0 + cfg.theta)

        infeas = gauge_inf(x_next)
        states.append(
            FALState(
                outer=k,
                eps=eps_k,
                rho=rho,
                mu_norm=float(np.linalg.norm(np.atleast_1d(mu))),
                al_value=al_value,
                infeasibility=infeas,
                npg_iterations=sub.iterations,
                npg_status=sub.status,
            )
        )
        x = x_next

        if infeas <= cfg.feas_tol and eps_k <= cfg.eps_target and sub.status == "converged":
            status = "converged"
            break

        gauge_curr = gauge_two(x_next)
        if gauge_curr > cfg.eta * gauge_prev:
            rho = max(cfg.gamma * rho, mu_pow)
            if rho > cfg.rho_cap:
                status = "penalty_overflow"
                break
        gauge_prev = gauge_curr

    return SolveResult(
        x=x,
        status=status,
        objective=phi(x),
        infeasibility=gauge_inf(x),
        upsilon=float(upsilon),
        outer_iterations=len(states),
        npg_iterations=total_npg,
        wall_time=time.perf_counter() - t_start,
        states=states,
    )


def fal_noiseless(system, preg, config=None, x0=None, x_feas=None):
    """Solve min phi-partial(x) subject to Ax = b."""
    cfg = config if config is not None else FALConfig()
    return _solve(system, preg, cfg, x0, x_feas, noisy=False)


def fal_noisy(system, preg, config=None, x0=None, x_feas=None):
    """Solve min phi-partial(x) subject to ||Ax - b|| <= sigma."""
    cfg = config if config is not None else FALConfig()
    return _solve(system, preg, cfg, x0, x_feas, noisy=True)
