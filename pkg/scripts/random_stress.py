"""Randomised stress run for the matching solver.

Draws random instances and weight tables, solves each one, and checks the
result three ways: the matching is stable, its weight matches the reported
weight, and (small instances only) the weight agrees with the brute-force
oracle.  Instances small enough to enumerate also get their optimum set
checked for meet/join closure.

Usage:
    python scripts/random_stress.py --rounds 500 --max-n 40 --seed 7
"""

import argparse
import random
import sys
import time

from stablecut import (
    Instance,
    WeightFunction,
    brute_max_weight_matching,
    enumerate_max_matchings,
    is_stable,
    join,
    matching_weight,
    meet,
    meta_rotation_poset,
    solve_max_weight,
)

ORACLE_LIMIT = 7
ENUMERATION_CAP = 10_000


def random_instance(rng: random.Random, n: int) -> Instance:
    def side() -> tuple[tuple[int, ...], ...]:
        rows = []
        for _ in range(n):
            row = list(range(n))
            rng.shuffle(row)
            rows.append(tuple(row))
        return tuple(rows)

    return Instance(side(), side())


def random_weights(rng: random.Random, n: int, spread: int) -> WeightFunction:
    return WeightFunction(
        tuple(tuple(rng.randint(-spread, spread) for _ in range(n)) for _ in range(n))
    )


def check_round(rng: random.Random, max_n: int) -> str | None:
    """One stress round; returns a failure description or None."""
    n = rng.randint(2, max_n)
    # alternate wide and narrow spreads so tied optima show up regularly
    spread = rng.choice((9, 9, 1))
    inst = random_instance(rng, n)
    w = random_weights(rng, n, spread)

    m, weight = solve_max_weight(inst, w)
    if not is_stable(inst, m):
        return f"n={n}: solver returned an unstable matching"
    if matching_weight(m, w) != weight:
        return f"n={n}: reported weight {weight} != recomputed weight"

    if n <= ORACLE_LIMIT:
        _, best = brute_max_weight_matching(inst, w)
        if weight != best:
            return f"n={n}: solver weight {weight} != oracle weight {best}"
        optima, truncated = enumerate_max_matchings(
            meta_rotation_poset(inst, w), ENUMERATION_CAP
        )
        if truncated:
            return f"n={n}: optimum enumeration truncated at {ENUMERATION_CAP}"
        keys = {opt.partner_of_boy for opt in optima}
        for a in optima:
            for b in optima:
                if (
                    meet(a, b, inst).partner_of_boy not in keys
                    or join(a, b, inst).partner_of_boy not in keys
                ):
                    return f"n={n}: optimum set is not meet/join closed"
    return None


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rounds", type=int, default=300)
    parser.add_argument("--max-n", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    start = time.perf_counter()
    for i in range(args.rounds):
        failure = check_round(rng, args.max_n)
        if failure is not None:
            print(f"round {i}: {failure}")
            return 1
        if (i + 1) % 50 == 0:
            print(f"{i + 1}/{args.rounds} rounds clean")
    elapsed = time.perf_counter() - start
    print(f"all {args.rounds} rounds clean in {elapsed:.1f}s (max n {args.max_n})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
