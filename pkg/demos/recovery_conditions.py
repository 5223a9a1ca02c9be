"""When is recovery guaranteed?  Certificates on small matrices.

Three checks this package offers at desk scale:

  1. exact restricted isometry constants by subset enumeration, and the
     error bound they certify for noisy recovery;
  2. a lower bound on the magnitude floor of non-sparse stationary
     points (converged solver outputs are either r-sparse or bounded
     away from zero);
  3. sampling-based falsification of the null-space property at a
     candidate solution.
"""

import numpy as np

from partialreg import (
    L1,
    LinearSystem,
    PartialRegularizer,
    delta_lower_bound,
    fal_noisy,
    gnsp_falsify,
    lnsp_falsify,
    ric_exact,
    stable_error_bound,
)


def unit_frame(m=10, n=16, target=0.26, iters=400, seed=11):
    # alternating projection toward a unit-column frame with small
    # worst-case column correlation
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, n))
    A /= np.linalg.norm(A, axis=0)
    G = A.T @ A
    for _ in range(iters):
        off = np.clip(G - np.diag(np.diag(G)), -target, target)
        G = off + np.eye(n)
        w, V = np.linalg.eigh(G)
        w[:-m] = 0.0
        G = (V * w) @ V.T
        d = np.sqrt(np.clip(np.diag(G), 1e-12, None))
        G /= np.outer(d, d)
    w, V = np.linalg.eigh(G)
    A = (V[:, -m:] * np.sqrt(np.clip(w[-m:], 0.0, None))).T
    return A / np.linalg.norm(A, axis=0)


def main():
    A = unit_frame()
    d2 = ric_exact(A, 2)
    print(f"10x16 frame: delta_2 = {d2.delta:.4f} (worst support {list(d2.witness_support)})")
    print(f"recovery threshold 1/3 -> {'holds' if d2.delta < 1/3 else 'fails'}")

    rng = np.random.default_rng(5)
    x_true = np.zeros(16)
    x_true[[2, 9]] = (1.5, -2.0)
    noise = rng.standard_normal(10) * 1e-2
    sigma = float(np.linalg.norm(noise))
    system = LinearSystem(A=A, b=A @ x_true + noise, sigma=sigma)
    res = fal_noisy(system, PartialRegularizer(L1(), 0, 1.0))
    err = np.linalg.norm(res.x - x_true)
    bound = stable_error_bound(d2.delta, sigma, 2, 0, res.x)
    print(f"noisy recovery: measured error {err:.4e} <= certified bound {bound:.4e}")
    print()

    A5 = np.array(
        [
            [1.0, -1.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, 0.0, 1.0],
        ]
    )
    b5 = np.array([0.0, 1.0, 2.0, 3.0])
    floor = delta_lower_bound(LinearSystem(A=A5, b=b5))
    print(f"five-variable system: nonzero magnitude floor {floor}")

    x_sparse = np.array([0.0, 0.0, 1.0, 2.0, 3.0])
    x_dense = np.array([1.0, 1.0, 0.0, 1.0, 2.0])
    for name, x in (("sparse point", x_sparse), ("min-l1 point", x_dense)):
        v = lnsp_falsify(A5, x, 2, L1(), n_samples=400, seed=0)
        print(f"local null-space check at {name}: "
              f"{'falsified' if v.falsified else 'not falsified'} "
              f"(min margin {v.min_margin:.2e})")
    v = gnsp_falsify(A5, x_sparse, 2, L1(), n_samples=400, seed=0)
    print(f"global null-space check for the matrix: "
          f"{'falsified' if v.falsified else 'not falsified'} "
          f"(uniform recovery is impossible even though the local check passes)")


if __name__ == "__main__":
    main()
