"""Deterministic experiment harness for recovery and regression sweeps.

Instance generation is seeded through named SeedSequence streams so a sweep
is reproducible record-for-record (wall-clock fields aside) regardless of
how many worker processes run it.  Records carry the recovered and true
vectors in memory; the CSV schema holds only the scalar summary columns.
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .fal import FALConfig, fal_noiseless, fal_noisy
from .npg import NPGConfig, npg_solve
from .objectives import LinearSystem, LogRegData, lambda_max, logistic_oracle, logistic_value_grad
from .partial_prox import PartialRegularizer
from .regularizers import make_regularizer

SUCCESS_TOL = 1e-3
ZERO_THRESHOLD = 1e-6

CSV_FIELDS = (
    "instance_id",
    "model_id",
    "success",
    "rel_err",
    "l_avg",
    "cardinality",
    "wall_time",
)


@dataclass(frozen=True)
class CSInstanceSpec:
    m: int = 32
    n: int = 128
    K: int = 4
    noise_std: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.K <= self.n:
            raise ValueError("need 1 <= K <= n")
        if not 1 <= self.m <= self.n:
            raise ValueError("need 1 <= m <= n")
        if not self.noise_std >= 0.0:
            raise ValueError("noise_std must be nonnegative")


@dataclass
class ExperimentRecord:
    instance_id: str
    model_id: str
    success: Optional[bool]
    rel_err: Optional[float]
    l_avg: Optional[float]
    cardinality: int
    wall_time: float
    x_hat: Optional[np.ndarray] = field(default=None, repr=False)
    x_true: Optional[np.ndarray] = field(default=None, repr=False)
    note: str = ""


def instance_seed(base_seed, K, idx):
    """Per-instance RNG seed split from (base_seed, K, idx)."""
    return int(np.random.SeedSequence([base_seed, K, idx]).generate_state(1)[0])


def gen_cs_instance(spec):
    """Random K-sparse signal against a row-orthonormal Gaussian matrix.

    Draw order is fixed: support, nonzero values, matrix, then noise.
    """
    rng = np.random.default_rng(spec.seed)
    support = rng.choice(spec.n, size=spec.K, replace=False)
    values = rng.standard_normal(spec.K)
    A = rng.standard_normal((spec.m, spec.n))
    q, _ = np.linalg.qr(A.T)
    A = q.T
    x_true = np.zeros(spec.n)
    x_true[support] = values
    b = A @ x_true
    sigma = 0.0
    if spec.noise_std > 0.0:
        noise = rng.normal(0.0, spec.noise_std, spec.m)
        b = b + noise
        sigma = float(np.linalg.norm(noise))
    return LinearSystem(A=A, b=b, sigma=sigma), x_true


def gen_logreg_instance(m, n, seed):
    """Balanced two-class Gaussian features with unit variance.

    Class means are drawn uniformly from [0, 1] (positive class) and
    [-1, 0] (negative class), feature by feature.
    """
    if m % 2 != 0:
        raise ValueError("m must be even to balance the classes")
    rng = np.random.default_rng(seed)
    half = m // 2
    mean_pos = rng.uniform(0.0, 1.0, n)
    mean_neg = rng.uniform(-1.0, 0.0, n)
    pos = rng.normal(mean_pos, 1.0, (half, n))
    neg = rng.normal(mean_neg, 1.0, (half, n))
    samples = np.vstack([pos, neg])
    outcomes = np.concatenate([np.ones(half), -np.ones(half)])
    return LogRegData(samples=samples, outcomes=outcomes)


def success(x_true, x_hat):
    """Recovery counts as a success when ||x_true - x_hat|| < 1e-3."""
    return bool(np.linalg.norm(np.asarray(x_true) - np.asarray(x_hat)) < SUCCESS_TOL)


def rel_err(x_true, x_hat):
    x_true = np.asarray(x_true, dtype=float)
    return float(np.linalg.norm(np.asarray(x_hat) - x_true) / np.linalg.norm(x_true))


def cardinality(x, threshold=ZERO_THRESHOLD):
    """Number of entries above the zero threshold in magnitude."""
    return int(np.count_nonzero(np.abs(np.asarray(x)) > threshold))


def r_schedule(K):
    """Deduplicated ceil(0.1 K), ..., ceil(0.9 K), K."""
    K = int(K)
    values = [(tenths * K + 9) // 10 for tenths in range(1, 10)] + [K]
    return sorted(set(values))


def _cs_models(kind, phi_params, K, r_values):
    if r_values is None:
        r_values = [0] + r_schedule(K)
    phi = make_regularizer(kind, **(phi_params or {}))
    return [(f"{kind}_r{r}", PartialRegularizer(phi, int(r), 1.0)) for r in r_values]


def _cs_task(args):
    (kind, phi_params, m, n, K, idx, noise_std, base_seed, r_values, fal_config) = args
    spec = CSInstanceSpec(m=m, n=n, K=K, noise_std=noise_std, seed=instance_seed(base_seed, K, idx))
    system, x_true = gen_cs_instance(spec)
    x_feas = np.linalg.lstsq(system.A, system.b, rcond=None)[0]
    instance_id = f"cs_m{m}_n{n}_K{K}_i{idx}"
    solver = fal_noisy if system.sigma > 0.0 else fal_noiseless
    records = []
    for model_id, preg in _cs_models(kind, phi_params, K, r_values):
        start = time.perf_counter()
        try:
            result = solver(system, preg, config=fal_config, x_feas=x_feas)
            x_hat = result.x
            note = "" if result.status == "converged" else result.status
        except (ValueError, RuntimeError) as exc:
            records.append(
                ExperimentRecord(
                    instance_id=instance_id,
                    model_id=model_id,
                    success=False,
                    rel_err=float("nan"),
                    l_avg=None,
                    cardinality=-1,
                    wall_time=time.perf_counter() - start,
                    x_hat=None,
                    x_true=x_true,
                    note=f"error: {exc}",
                )
            )
            continue
        records.append(
            ExperimentRecord(
                instance_id=instance_id,
                model_id=model_id,
                success=success(x_true, x_hat),
                rel_err=rel_err(x_true, x_hat),
                l_avg=None,
                cardinality=cardinality(x_hat),
                wall_time=time.perf_counter() - start,
                x_hat=x_hat,
                x_true=x_true,
                note=note,
            )
        )
    return records


def run_cs_sweep(
    kind="l1",
    m=32,
    n=128,
    k_values=(4, 8, 12, 16, 20, 24, 28),
    instances_per_k=20,
    r_values=None,
    noise_std=0.0,
    base_seed=0,
    workers=1,
    phi_params=None,
    fal_config=None,
):
    """Recovery sweep over sparsity levels; returns sorted ExperimentRecords.

    For each instance the full model (r = 0) and the partial models on the
    default r schedule are solved against the same data, so success
    frequencies are directly comparable across r.
    """
    tasks = [
        (kind, phi_params, m, n, int(K), idx, noise_std, base_seed, r_values, fal_config)
        for K in k_values
        for idx in range(instances_per_k)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_cs_task, tasks))
    else:
        chunks = [_cs_task(t) for t in tasks]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda rec: (rec.instance_id, rec.model_id))
    return records


def _lambda_hat_search(oracle, n, lam_max, r, target_card, npg_config):
    """Smallest partial-penalty weight (by bisection) whose solution has
    cardinality at most target_card.  Returns (weight, solution, note)."""

    def solve(weight):
        preg = PartialRegularizer(make_regularizer("l1"), int(r), float(weight))
        return npg_solve(oracle, preg, np.zeros(n), npg_config).x

    lo = 1e-6 * lam_max
    hi = 10.0 * lam_max
    w_hi = solve(hi)
    if cardinality(w_hi) > target_card:
        return hi, w_hi, "bracket_exhausted"
    for _ in range(40):
        if hi - lo <= 1e-9 * lam_max:
            break
        mid = 0.5 * (lo + hi)
        w_mid = solve(mid)
        if cardinality(w_mid) <= target_card:
            hi, w_hi = mid, w_mid
        else:
            lo = mid
    return hi, w_hi, ""


def _logreg_task(args):
    (m, n, idx, base_seed, lambda_fracs, npg_config) = args
    seed = int(np.random.SeedSequence([base_seed, idx]).generate_state(1)[0])
    data = gen_logreg_instance(m, n, seed)
    oracle = logistic_oracle(data)
    lam_max = lambda_max(data)
    cfg = npg_config if npg_config is not None else NPGConfig()
    instance_id = f"logreg_m{m}_n{n}_i{idx}"
    records = []
    for frac in lambda_fracs:
        start = time.perf_counter()
        preg = PartialRegularizer(make_regularizer("l1"), 0, frac * lam_max)
        w_full = npg_solve(oracle, preg, np.zeros(n), cfg).x
        target_card = cardinality(w_full)
        records.append(
            ExperimentRecord(
                instance_id=instance_id,
                model_id=f"l1_frac{frac:g}",
                success=None,
                rel_err=None,
                l_avg=logistic_value_grad(data, w_full)[0],
                cardinality=target_card,
                wall_time=time.perf_counter() - start,
                x_hat=w_full,
                x_true=None,
            )
        )
        if target_card < 1:
            continue
        for r in r_schedule(target_card):
            start = time.perf_counter()
            _, w_r, note = _lambda_hat_search(oracle, n, lam_max, r, target_card, cfg)
            records.append(
                ExperimentRecord(
                    instance_id=instance_id,
                    model_id=f"pl1_frac{frac:g}_r{r}",
                    success=None,
                    rel_err=None,
                    l_avg=logistic_value_grad(data, w_r)[0],
                    cardinality=cardinality(w_r),
                    wall_time=time.perf_counter() - start,
                    x_hat=w_r,
                    x_true=None,
                    note=note,
                )
            )
    return records


def run_logreg_sweep(
    m=100,
    n=50,
    instances=10,
    lambda_fracs=(0.5, 0.25, 0.1, 0.01),
    base_seed=0,
    workers=1,
    npg_config=None,
):
    """Sparse logistic regression sweep comparing full and partial penalties.

    For each full-penalty weight the resulting cardinality K sets the
    target; partial models on the r schedule are then tuned (by bisection
    on the weight) to match cardinality at most K, and their average
    logistic losses are recorded.
    """
    tasks = [(m, n, idx, base_seed, tuple(lambda_fracs), npg_config) for idx in range(instances)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_logreg_task, tasks))
    else:
        chunks = [_logreg_task(t) for t in tasks]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda rec: (rec.instance_id, rec.model_id))
    return records


def _format_field(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def write_records_csv(records, path):
    """Write records with the mandatory header; floats carry 17 digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for rec in records:
            writer.writerow([_format_field(getattr(rec, name)) for name in CSV_FIELDS])
