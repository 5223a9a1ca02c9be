"""Command line entry points.

Subcommands: solve, prox-check, ric, delta-bound, nsp-check, experiment.
Matrix and vector inputs are dense headerless CSV; result tables are CSV
with a header row and 17-significant-digit floats.  A flat key=value
config file can seed the solve options; explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .analysis import delta_lower_bound, gnsp_falsify, lnsp_falsify, ric_exact
from .fal import fal_noiseless, fal_noisy
from .harness import run_cs_sweep, run_logreg_sweep, write_records_csv
from .objectives import LinearSystem, load_matrix, load_vector, save_vector
from .partial_prox import PartialRegularizer
from .regularizers import REGULARIZER_KINDS, make_regularizer, prox_array

_PROX_CHECK_TOL = 1e-8


def load_config(path):
    """Parse flat key=value lines; blank lines and # comments are skipped."""
    table = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            table[key.strip()] = value.strip()
    return table


def _merge(args, config, key, cast, default, config_key=None):
    cli_value = getattr(args, key)
    if cli_value is not None:
        return cli_value
    config_key = config_key or key
    if config_key in config:
        return cast(config[config_key])
    return default


def _build_regularizer(kind, args, config):
    def pick(name, cast=float):
        value = getattr(args, name)
        if value is None and name in config:
            value = cast(config[name])
        return value

    params = {}
    if kind == "lq":
        params["q"] = pick("q")
    elif kind == "log":
        params["eps"] = pick("eps")
    elif kind == "capped_l1":
        params["nu"] = pick("nu")
    elif kind == "mcp":
        params["lam"] = pick("reg_lambda")
        params["alpha"] = pick("alpha")
    elif kind == "scad":
        params["lam"] = pick("reg_lambda")
        params["beta"] = pick("beta")
    params = {key: value for key, value in params.items() if value is not None}
    return make_regularizer(kind, **params)


def _cmd_solve(args):
    config = load_config(args.config) if args.config else {}
    matrix_path = _merge(args, config, "matrix", str, None)
    rhs_path = _merge(args, config, "rhs", str, None)
    if matrix_path is None or rhs_path is None:
        raise ValueError("solve needs --matrix and --rhs (from flags or the config file)")
    sigma = _merge(args, config, "sigma", float, 0.0)
    kind = _merge(args, config, "reg", str, "l1")
    r = _merge(args, config, "r", int, 0)
    weight = _merge(args, config, "weight", float, 1.0, config_key="lambda")
    out = _merge(args, config, "out", str, None)

    system = LinearSystem(A=load_matrix(matrix_path), b=load_vector(rhs_path), sigma=sigma)
    preg = PartialRegularizer(_build_regularizer(kind, args, config), r, weight)
    solver = fal_noisy if sigma > 0.0 else fal_noiseless
    result = solver(system, preg)
    print(result.summary_header())
    print(result.summary_line())
    if out:
        save_vector(out, result.x)
    return 0 if result.status == "converged" else 1


def _grid_objective_min(reg, t, scale):
    # coarse grid over [t - |t|, t + |t|] plus the penalty breakpoints,
    # refined twice around the incumbent
    a = abs(t)
    special = [0.0, t]
    for name in ("nu", "lam"):
        if hasattr(reg, name):
            special.append(getattr(reg, name))
    if hasattr(reg, "lam") and hasattr(reg, "alpha"):
        special.append(reg.lam * reg.alpha)
    if hasattr(reg, "lam") and hasattr(reg, "beta"):
        special.append(reg.lam * reg.beta)

    def objective(points):
        return 0.5 * (points - t) ** 2 + scale * reg.value(np.abs(points))

    points = np.linspace(t - a, t + a, 2001)
    extras = [p * s for p in special for s in (1.0, -1.0) if abs(p * s - t) <= a + 1e-12]
    points = np.concatenate([points, np.asarray(extras, dtype=float)])
    values = objective(points)
    best = float(values.min())
    center = float(points[int(values.argmin())])
    width = a / 1000.0 if a > 0 else 1.0
    for _ in range(2):
        local = np.linspace(center - width, center + width, 401)
        values = objective(local)
        if float(values.min()) < best:
            best = float(values.min())
            center = float(local[int(values.argmin())])
        width /= 200.0
    return best


def _cmd_prox_check(args):
    rng = np.random.default_rng(args.seed)
    print("kind,samples,max_gap,pass")
    all_ok = True
    for kind in REGULARIZER_KINDS:
        reg = make_regularizer(kind)
        worst = -np.inf
        for _ in range(args.samples):
            t = rng.uniform(-10.0, 10.0)
            scale = rng.uniform(0.0, 5.0) + 1e-12
            _, value = prox_array(reg, np.array([t]), scale)
            gap = float(value[0]) - _grid_objective_min(reg, t, scale)
            worst = max(worst, gap)
        ok = worst <= _PROX_CHECK_TOL
        all_ok = all_ok and ok
        print(f"{kind},{args.samples},{worst:.17g},{int(ok)}")
    return 0 if all_ok else 1


def _cmd_ric(args):
    result = ric_exact(load_matrix(args.matrix), args.k)
    print("order,delta,witness_support")
    witness = ";".join(str(i) for i in result.witness_support)
    print(f"{result.order},{result.delta:.17g},{witness}")
    return 0


def _cmd_delta_bound(args):
    system = LinearSystem(A=load_matrix(args.matrix), b=load_vector(args.rhs))
    value = delta_lower_bound(system)
    print("delta")
    print(f"{value:.17g}")
    return 0


def _cmd_nsp_check(args):
    A = load_matrix(args.matrix)
    x = load_vector(args.point)
    phi = make_regularizer(args.reg)
    if args.variant == "local":
        verdict = lnsp_falsify(
            A, x, args.r, phi, eps_ball=args.eps_ball, n_samples=args.samples, seed=args.seed
        )
    else:
        verdict = gnsp_falsify(A, x, args.r, phi, n_samples=args.samples, seed=args.seed)
    print("variant,falsified,samples,min_margin")
    print(f"{args.variant},{int(verdict.falsified)},{verdict.samples},{verdict.min_margin:.17g}")
    if verdict.falsified:
        print("witness=" + ";".join("%.17g" % v for v in verdict.witness))
    return 0


def _parse_int_list(text):
    return tuple(int(part) for part in text.split(",") if part.strip())


def _parse_float_list(text):
    return tuple(float(part) for part in text.split(",") if part.strip())


def _cmd_experiment(args):
    if args.mode == "cs":
        records = run_cs_sweep(
            kind=args.reg,
            m=args.m,
            n=args.n,
            k_values=_parse_int_list(args.k_values),
            instances_per_k=args.instances,
            noise_std=args.noise_std,
            base_seed=args.base_seed,
            workers=args.workers,
        )
    else:
        records = run_logreg_sweep(
            m=args.m,
            n=args.n,
            instances=args.instances,
            lambda_fracs=_parse_float_list(args.lambda_fracs),
            base_seed=args.base_seed,
            workers=args.workers,
        )
    write_records_csv(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="partialreg",
        description="Sparse recovery with partially penalized models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one recovery problem from CSV data")
    solve.add_argument("--matrix", help="CSV file holding A")
    solve.add_argument("--rhs", help="CSV file holding b")
    solve.add_argument("--sigma", type=float, help="noise level (0 = exact constraint)")
    solve.add_argument("--reg", choices=REGULARIZER_KINDS, help="penalty kind")
    solve.add_argument("--r", type=int, help="number of unpenalized leading magnitudes")
    solve.add_argument("--lambda", dest="weight", type=float, help="penalty weight")
    solve.add_argument("--q", type=float, help="lq exponent")
    solve.add_argument("--eps", type=float, help="log penalty offset")
    solve.add_argument("--nu", type=float, help="capped_l1 cap")
    solve.add_argument("--reg-lambda", type=float, help="mcp/scad slope parameter")
    solve.add_argument("--alpha", type=float, help="mcp width parameter")
    solve.add_argument("--beta", type=float, help="scad knot parameter")
    solve.add_argument("--config", help="key=value file with defaults for these flags")
    solve.add_argument("--out", help="write the solution vector to this CSV file")
    solve.set_defaults(func=_cmd_solve)

    prox = sub.add_parser("prox-check", help="compare scalar prox against a grid search")
    prox.add_argument("--samples", type=int, default=200)
    prox.add_argument("--seed", type=int, default=0)
    prox.set_defaults(func=_cmd_prox_check)

    ric = sub.add_parser("ric", help="exact restricted isometry constant")
    ric.add_argument("--matrix", required=True)
    ric.add_argument("--k", type=float, required=True)
    ric.set_defaults(func=_cmd_ric)

    bound = sub.add_parser("delta-bound", help="magnitude lower bound for local minimizers")
    bound.add_argument("--matrix", required=True)
    bound.add_argument("--rhs", required=True)
    bound.set_defaults(func=_cmd_delta_bound)

    nsp = sub.add_parser("nsp-check", help="falsification search for null-space properties")
    nsp.add_argument("--matrix", required=True)
    nsp.add_argument("--point", required=True, help="CSV vector to test the property at")
    nsp.add_argument("--r", type=int, required=True)
    nsp.add_argument("--reg", choices=REGULARIZER_KINDS, default="l1")
    nsp.add_argument("--variant", choices=("local", "global"), default="local")
    nsp.add_argument("--samples", type=int, default=1000)
    nsp.add_argument("--seed", type=int, default=0)
    nsp.add_argument("--eps-ball", type=float, default=1e-3)
    nsp.set_defaults(func=_cmd_nsp_check)

    exp = sub.add_parser("experiment", help="run a recovery or regression sweep")
    exp.add_argument("mode", choices=("cs", "logreg"))
    exp.add_argument("--out", required=True, help="CSV file for the records")
    exp.add_argument("--m", type=int, default=32)
    exp.add_argument("--n", type=int, default=128)
    exp.add_argument("--k-values", default="4,8,12,16,20,24,28", help="cs sparsity levels")
    exp.add_argument("--instances", type=int, default=20)
    exp.add_argument("--noise-std", type=float, default=0.0)
    exp.add_argument("--reg", choices=REGULARIZER_KINDS, default="l1")
    exp.add_argument("--lambda-fracs", default="0.5,0.25,0.1,0.01")
    exp.add_argument("--base-seed", type=int, default=0)
    exp.add_argument("--workers", type=int, default=1)
    exp.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
