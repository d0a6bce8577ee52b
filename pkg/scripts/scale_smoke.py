"""Timing sweep for the solver across instance sizes.

Builds one random instance per requested size with dense fractional
weights (six decimal places), then reports how long the rotation poset,
the cut-graph reduction, and the full solve take.

Usage:
    python scripts/scale_smoke.py --sizes 50 100 200 300 --seed 0
"""

import argparse
import random
import sys
import time

from stablecut import (
    Instance,
    WeightFunction,
    build_poset,
    build_reduction,
    solve_max_weight,
)

WEIGHT_SCALE = 10**6


def random_instance(rng: random.Random, n: int) -> Instance:
    def side() -> tuple[tuple[int, ...], ...]:
        rows = []
        for _ in range(n):
            row = list(range(n))
            rng.shuffle(row)
            rows.append(tuple(row))
        return tuple(rows)

    return Instance(side(), side())


def dense_weights(rng: random.Random, n: int) -> WeightFunction:
    bound = 1000 * WEIGHT_SCALE
    return WeightFunction(
        tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n)),
        scale=WEIGHT_SCALE,
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 300])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    print(f"{'n':>5} {'rotations':>9} {'dag edges':>9} "
          f"{'poset s':>8} {'reduce s':>8} {'solve s':>8}")
    for n in args.sizes:
        rng = random.Random(args.seed * 1_000_003 + n)
        inst = random_instance(rng, n)
        w = dense_weights(rng, n)

        t0 = time.perf_counter()
        poset = build_poset(inst)
        t1 = time.perf_counter()
        art = build_reduction(inst, w, poset)
        t2 = time.perf_counter()
        solve_max_weight(inst, w)
        t3 = time.perf_counter()

        dag_edges = 0 if not poset.rotations else len(art.dag.edges)
        print(f"{n:>5} {len(poset.rotations):>9} {dag_edges:>9} "
              f"{t1 - t0:>8.3f} {t2 - t1:>8.3f} {t3 - t2:>8.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
