"""Shared test fixtures: tiny frozen instances and seeded random generators.

The small instances here have all their derived facts (rotations, poset
edges, optimal matchings) cross-checked against the brute-force oracle;
tests freeze those values directly.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from stablecut import Edge, Instance, WeightedDag, WeightFunction

# Two couples where each boy's favourite girl ranks him last: two stable
# matchings, one rotation apart.
TWO_BY_TWO_TEXT = """\
2
1 2
2 1
2 1
1 2
"""

# Everyone shares one ranking: the diagonal is the only stable matching.
IDENTITY_THREE_TEXT = """\
3
1 2 3
1 2 3
1 2 3
1 2 3
1 2 3
1 2 3
"""


def two_by_two() -> Instance:
    return Instance(((0, 1), (1, 0)), ((1, 0), (0, 1)))


def identity_three() -> Instance:
    return Instance(((0, 1, 2),) * 3, ((0, 1, 2),) * 3)


def branch_four() -> Instance:
    """Four couples, three rotations with precedence 0->1 and 0->2, five
    stable matchings."""
    return Instance(
        ((1, 3, 2, 0), (2, 3, 1, 0), (2, 1, 0, 3), (1, 0, 3, 2)),
        ((0, 3, 1, 2), (1, 2, 3, 0), (3, 0, 1, 2), (2, 1, 0, 3)),
    )


# Weight tables for two_by_two, row = boy, column = girl.
TIE_TABLE = ((3, 2), (2, 1))  # both stable matchings weigh 4
SINGLE_TABLE = ((1, 0), (0, 0))  # only the boy-optimal matching scores


def tie_weights() -> WeightFunction:
    return WeightFunction(TIE_TABLE)


def single_weights() -> WeightFunction:
    return WeightFunction(SINGLE_TABLE)


def path_dag() -> WeightedDag:
    """s -> a -> t with weights 5 and -2; exactly two ideal cuts."""
    return WeightedDag(3, 0, 2, (Edge(0, 1, 5), Edge(1, 2, -2)))


def diamond_dag() -> WeightedDag:
    """Two parallel source-to-sink paths; four ideal cuts, best weighs 7."""
    return WeightedDag(
        4, 0, 3, (Edge(0, 1, 1), Edge(0, 2, 4), Edge(1, 3, 3), Edge(2, 3, 2))
    )


def random_instance(rng: random.Random, n: int) -> Instance:
    def side() -> tuple[tuple[int, ...], ...]:
        rows = []
        for _ in range(n):
            row = list(range(n))
            rng.shuffle(row)
            rows.append(tuple(row))
        return tuple(rows)

    return Instance(side(), side())


def random_weights(
    rng: random.Random, n: int, lo: int = -9, hi: int = 9
) -> WeightFunction:
    return WeightFunction(
        tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n))
    )


def random_dag(
    rng: random.Random,
    max_vertices: int = 12,
    density: float = 0.3,
    lo: int = -9,
    hi: int = 9,
) -> WeightedDag:
    """Random DAG in which every vertex lies on a source-to-sink path.

    Vertices appear in topological order with 0 the source and n-1 the
    sink; whenever sampling leaves a vertex without an in- or out-edge, a
    patch edge restores connectivity.
    """
    n = rng.randint(2, max_vertices)
    edges = [
        Edge(u, v, rng.randint(lo, hi))
        for u in range(n)
        for v in range(u + 1, n)
        if rng.random() < density
    ]
    has_in = {e.head for e in edges}
    has_out = {e.tail for e in edges}
    for v in range(1, n):
        if v not in has_in:
            edges.append(Edge(rng.randrange(v), v, rng.randint(lo, hi)))
    for v in range(n - 1):
        if v not in has_out:
            edges.append(Edge(v, rng.randrange(v + 1, n), rng.randint(lo, hi)))
    return WeightedDag(n, 0, n - 1, tuple(edges))


@st.composite
def instances(draw, min_n: int = 1, max_n: int = 6) -> Instance:
    n = draw(st.integers(min_n, max_n))
    boys = tuple(tuple(draw(st.permutations(tuple(range(n))))) for _ in range(n))
    girls = tuple(tuple(draw(st.permutations(tuple(range(n))))) for _ in range(n))
    return Instance(boys, girls)


@st.composite
def weighted_instances(
    draw, min_n: int = 1, max_n: int = 5, lo: int = -9, hi: int = 9
) -> tuple[Instance, WeightFunction]:
    inst = draw(instances(min_n, max_n))
    table = tuple(
        tuple(draw(st.integers(lo, hi)) for _ in range(inst.n))
        for _ in range(inst.n)
    )
    return inst, WeightFunction(table)
