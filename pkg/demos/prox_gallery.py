"""Tour of the six scalar penalties and their proximal maps.

For a few inputs t and multipliers, prints where each penalty sends t and
what the one-dimensional subproblem value is.  The interesting contrast:
soft thresholding (l1) shrinks everything, the folded-concave penalties
(mcp, scad, capped_l1) leave large entries untouched, and lq/log shrink
hard near zero but gently out in the tails.
"""

import numpy as np

from partialreg import REGULARIZER_KINDS, make_regularizer, scalar_prox


def main():
    inputs = (0.3, 1.0, 2.5, 6.0)
    scales = (0.25, 1.0)
    header = f"{'kind':<10}" + "".join(
        f"  t={t:<4g}lam={s:<5g}" for t in inputs for s in scales
    )
    print(header)
    print("-" * len(header))
    for kind in REGULARIZER_KINDS:
        reg = make_regularizer(kind)
        cells = []
        for t in inputs:
            for s in scales:
                res = scalar_prox(reg, t, s)
                cells.append(f"  {res.u:>12.4f}")
        print(f"{kind:<10}" + "".join(cells))

    print()
    print("soft-threshold check: l1 prox of t=2.5 at lam=1 ->",
          scalar_prox(make_regularizer("l1"), 2.5, 1.0).u)
    print("mcp keeps large entries: prox of t=6 at lam=1 ->",
          scalar_prox(make_regularizer("mcp"), 6.0, 1.0).u)


if __name__ == "__main__":
    main()
