"""Recovery frequency as sparsity grows, full l1 versus partial l1.

Runs a small Monte Carlo sweep (random row-orthonormal sensing matrices,
exactly-K-sparse ground truths) and prints how often each model recovers
the truth to 1e-3.  Partial regularization with r near K keeps working at
sparsity levels where full l1 has already collapsed.

Takes around a minute; shrink instances_per_k for a faster look.
"""

import collections

from partialreg import run_cs_sweep
from partialreg.harness import r_schedule


def main():
    k_values = (4, 8, 12)
    instances = 8
    records = run_cs_sweep(
        kind="l1",
        m=32,
        n=128,
        k_values=k_values,
        instances_per_k=instances,
        base_seed=0,
    )
    freq = collections.defaultdict(int)
    for rec in records:
        K = int(rec.instance_id.split("_K")[1].split("_")[0])
        r = int(rec.model_id.rsplit("_r", 1)[1])
        freq[(K, r)] += bool(rec.success)

    for K in k_values:
        print(f"K = {K} (out of {instances} instances)")
        for r in [0] + r_schedule(K):
            label = "full l1" if r == 0 else f"partial r={r}"
            bar = "#" * freq[(K, r)]
            print(f"  {label:<14} {freq[(K, r)]:>2}/{instances} {bar}")
        print()


if __name__ == "__main__":
    main()
