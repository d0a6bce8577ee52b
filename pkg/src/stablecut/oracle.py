"""Brute-force reference answers for cross-checking the real solvers.

Everything here enumerates exhaustively and stays deliberately independent
of the rotation and flow machinery; hard size limits keep the exponential
blow-ups honest.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .core import Instance, Matching, WeightFunction, dominates, matching_weight
from .idealcut import IdealCut, WeightedDag, cut_weight

MAX_ORACLE_N = 8
MAX_ORACLE_VERTICES = 20


def all_stable_matchings(inst: Instance) -> list[Matching]:
    """Every stable matching, by brute force over all n! assignments,
    ordered lexicographically by partner array.  Refuses n > 8."""
    n = inst.n
    if n > MAX_ORACLE_N:
        raise ValueError(f"oracle refuses instances larger than n={MAX_ORACLE_N}")
    boy_prefs = inst.boy_prefs
    boy_rank = inst.boy_rank
    girl_rank = inst.girl_rank
    found = []
    for perm in permutations(range(n)):
        girl_holder = [0] * n
        for b, g in enumerate(perm):
            girl_holder[g] = b
        stable = True
        for b in range(n):
            rank_here = boy_rank[b][perm[b]]
            for g in boy_prefs[b][:rank_here]:
                if girl_rank[g][b] < girl_rank[g][girl_holder[g]]:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            found.append(Matching(perm))
    return found


def brute_max_weight_matching(
    inst: Instance, w: WeightFunction, matchings: list[Matching] | None = None
) -> tuple[Matching, int]:
    """Heaviest stable matching by exhaustion.  Ties go to the matching
    dominating all other optima, then to the lexicographically smallest
    partner array.  A precomputed stable set may be passed in."""
    if matchings is None:
        matchings = all_stable_matchings(inst)
    best_weight = max(matching_weight(m, w) for m in matchings)
    optima = [m for m in matchings if matching_weight(m, w) == best_weight]
    dominant = [
        m for m in optima if all(dominates(m, other, inst) for other in optima)
    ]
    pick = min(dominant or optima, key=lambda m: m.partner_of_boy)
    return pick, best_weight


def all_ideal_cuts(g: WeightedDag) -> list[IdealCut]:
    """Every ideal cut, by brute force over all vertex subsets, ordered by
    source-side size then lexicographically.  Refuses more than 20
    vertices."""
    n = g.num_vertices
    if n > MAX_ORACLE_VERTICES:
        raise ValueError(
            f"oracle refuses graphs larger than {MAX_ORACLE_VERTICES} vertices"
        )
    middle = [v for v in range(n) if v not in (g.source, g.sink)]
    cuts = []
    for size in range(len(middle) + 1):
        for chosen in combinations(middle, size):
            side = frozenset(chosen) | {g.source}
            if any(e.head in side and e.tail not in side for e in g.edges):
                continue
            cuts.append(IdealCut(side))
    cuts.sort(key=lambda c: (len(c.source_side), tuple(sorted(c.source_side))))
    return cuts


def brute_max_weight_cut(g: WeightedDag) -> tuple[IdealCut, int]:
    """Heaviest ideal cut by exhaustion.  Ties go to the smallest source
    side, then lexicographic."""
    cuts = all_ideal_cuts(g)
    best = max(cut_weight(g, c) for c in cuts)
    heaviest = [c for c in cuts if cut_weight(g, c) == best]
    heaviest.sort(key=lambda c: (len(c.source_side), tuple(sorted(c.source_side))))
    return heaviest[0], best
