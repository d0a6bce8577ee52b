"""Rotations of a stable matching instance and their precedence poset.

A rotation is an ordered cycle of matched pairs that can be shifted in one
step to move from a stable matching to the next one below it.  The
predecessor-closed subsets of the rotation poset are in bijection with the
stable matchings, which is what every solver in this package builds on.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, Mapping

from .core import ContractViolation, Instance, Matching, gale_shapley
from .ideals import iter_ideals

Pair = tuple[int, int]


@dataclass(frozen=True)
class Rotation:
    """An ordered cycle ((b0, g0), ..., (br-1, gr-1)) of matched pairs.

    ``id`` is the dense discovery index within an instance; detection
    helpers that are not tied to an enumeration return rotations with
    id -1.
    """

    pairs: tuple[Pair, ...]
    id: int = -1

    def boys(self) -> tuple[int, ...]:
        return tuple(b for b, _ in self.pairs)


@dataclass(frozen=True, eq=False)
class RotationPoset:
    """All rotations of an instance plus their precedence arcs.

    An arc (a, b) in ``edges`` means rotation a precedes rotation b: any
    predecessor-closed subset containing b must contain a.
    """

    rotations: tuple[Rotation, ...]
    edges: frozenset[tuple[int, int]]
    moves_to: Mapping[Pair, int]
    moves_from: Mapping[Pair, int]
    preds: tuple[frozenset[int], ...]
    topo_order: tuple[int, ...]

    def is_closed(self, members: frozenset[int]) -> bool:
        return all(self.preds[r] <= members for r in members)


class _ChainWalk:
    """Mutable elimination state along a downward chain of stable matchings.

    Girls only improve along any chain, so each boy's candidate pointer
    moves one way; the walk answers successor queries in amortised
    constant time and stays correct across every elimination it applies.
    """

    def __init__(self, inst: Instance, matching: Matching) -> None:
        self.inst = inst
        self.boy_partner = list(matching.partner_of_boy)
        self.girl_partner = list(matching.partner_of_girl)
        # Next position worth probing in each boy's list.  In a stable
        # matching no girl above the current partner prefers the boy, so
        # the probe starts just below the partner.
        self.cursor = [
            inst.boy_rank[b][self.boy_partner[b]] + 1 for b in range(inst.n)
        ]

    def successor_girl(self, b: int) -> int | None:
        """First girl below b's partner who strictly prefers b to her own."""
        prefs = self.inst.boy_prefs[b]
        girl_rank = self.inst.girl_rank
        i = self.cursor[b]
        n = len(prefs)
        while i < n:
            g = prefs[i]
            if girl_rank[g][b] < girl_rank[g][self.girl_partner[g]]:
                break
            i += 1
        self.cursor[b] = i
        return prefs[i] if i < n else None

    def exposed_cycles(self) -> list[tuple[Pair, ...]]:
        """All maximal cycles of the successor relation, scan order by boy id.

        Each cycle is rotated so its smallest boy comes first.
        """
        n = self.inst.n
        succ = [-1] * n
        for b in range(n):
            g = self.successor_girl(b)
            if g is not None:
                succ[b] = self.girl_partner[g]
        color = [0] * n  # 0 unseen, 1 on current walk, 2 settled
        cycles = []
        for start in range(n):
            if color[start]:
                continue
            path = []
            b = start
            while b >= 0 and color[b] == 0:
                color[b] = 1
                path.append(b)
                b = succ[b]
            if b >= 0 and color[b] == 1:
                cycle = path[path.index(b):]
                pivot = cycle.index(min(cycle))
                cycle = cycle[pivot:] + cycle[:pivot]
                cycles.append(tuple((x, self.boy_partner[x]) for x in cycle))
            for x in path:
                color[x] = 2
        return cycles

    def apply_cycle(self, pairs: tuple[Pair, ...]) -> None:
        """Shift every boy in the cycle to the next girl, after verifying the
        cycle really is exposed in the current matching."""
        for b, g in pairs:
            if self.boy_partner[b] != g:
                raise ContractViolation(
                    f"rotation pair ({b + 1}, {g + 1}) is not matched here"
                )
        r = len(pairs)
        for i, (b, _) in enumerate(pairs):
            expected = pairs[(i + 1) % r][1]
            if self.successor_girl(b) != expected:
                raise ContractViolation(
                    f"rotation is not exposed: boy {b + 1} does not lead to"
                    f" girl {expected + 1}"
                )
        for i, (b, _) in enumerate(pairs):
            g_next = pairs[(i + 1) % r][1]
            self.boy_partner[b] = g_next
            self.girl_partner[g_next] = b

    def matching(self) -> Matching:
        return Matching(tuple(self.boy_partner))


def exposed_rotations(inst: Instance, m: Matching) -> list[Rotation]:
    """Rotations exposed in the stable matching m.  Empty exactly when m is
    the girl-optimal matching."""
    walk = _ChainWalk(inst, m)
    return [Rotation(pairs) for pairs in walk.exposed_cycles()]


def eliminate(inst: Instance, m: Matching, rho: Rotation) -> Matching:
    """Apply one exposed rotation.  Boys in the cycle move down their lists,
    the affected girls move up; raises ContractViolation when rho is not
    exposed in m."""
    walk = _ChainWalk(inst, m)
    walk.apply_cycle(rho.pairs)
    return walk.matching()


def rotation_count_limit(n: int) -> int:
    return n * (n - 1) // 2 + n


def enumerate_rotations(inst: Instance) -> list[Rotation]:
    """Discover every rotation of the instance.

    Walks a single elimination chain from the boy-optimal matching down to
    the girl-optimal one, re-detecting exposed cycles after each step;
    every rotation appears exactly once along any such chain.  Ids are
    assigned in first-sighting order.
    """
    walk = _ChainWalk(inst, gale_shapley(inst, "boys"))
    ids: dict[tuple[Pair, ...], int] = {}
    order: list[tuple[Pair, ...]] = []
    while True:
        cycles = walk.exposed_cycles()
        if not cycles:
            break
        for pairs in cycles:
            if pairs not in ids:
                ids[pairs] = len(order)
                order.append(pairs)
        first = min(cycles, key=lambda pairs: ids[pairs])
        walk.apply_cycle(first)
    if walk.matching() != gale_shapley(inst, "girls"):
        raise ContractViolation("elimination chain did not end girl-optimal")
    if len(order) > rotation_count_limit(inst.n):
        raise ContractViolation("rotation count exceeds the n(n-1)/2 + n bound")
    return [Rotation(pairs, rid) for rid, pairs in enumerate(order)]


def _girl_crossings(
    inst: Instance, rotations: Iterable[Rotation]
) -> tuple[list[list[int]], list[list[tuple[int, int]]]]:
    """Per girl, her partner-change events sorted by improving rank.

    Returns (new_ranks, events) where events[g] holds (old_rank, rid)
    aligned with new_ranks[g]; event rid moved girl g from a boy she ranks
    old_rank to one she ranks new_rank < old_rank.
    """
    staged: list[list[tuple[int, int, int]]] = [[] for _ in range(inst.n)]
    for rho in rotations:
        r = len(rho.pairs)
        for i, (b, g) in enumerate(rho.pairs):
            b_new = rho.pairs[(i - 1) % r][0]
            staged[g].append((inst.girl_rank[g][b_new], inst.girl_rank[g][b], rho.id))
    new_ranks: list[list[int]] = []
    events: list[list[tuple[int, int]]] = []
    for per_girl in staged:
        per_girl.sort()
        new_ranks.append([new for new, _, _ in per_girl])
        events.append([(old, rid) for _, old, rid in per_girl])
    return new_ranks, events


def build_poset(inst: Instance) -> RotationPoset:
    """Enumerate rotations and connect them with precedence arcs.

    Two arc families suffice to generate the full precedence order.  If one
    rotation hands a pair to another, the giver precedes the taker.  And if
    a rotation drags boy b past a girl g he never stably holds, then g must
    already rank her partner above b at that point, so the unique rotation
    that lifted g across b precedes it.
    """
    rotations = tuple(enumerate_rotations(inst))
    moves_to: dict[Pair, int] = {}
    moves_from: dict[Pair, int] = {}
    for rho in rotations:
        r = len(rho.pairs)
        for i, (b, g) in enumerate(rho.pairs):
            g_next = rho.pairs[(i + 1) % r][1]
            if (b, g) in moves_from or (b, g_next) in moves_to:
                raise ContractViolation("two rotations move the same pair")
            moves_from[(b, g)] = rho.id
            moves_to[(b, g_next)] = rho.id

    edges: set[tuple[int, int]] = set()
    for pair, giver in moves_to.items():
        taker = moves_from.get(pair)
        if taker is not None:
            edges.add((giver, taker))

    m0 = gale_shapley(inst, "boys")
    new_ranks, events = _girl_crossings(inst, rotations)
    boy_rank, girl_rank = inst.boy_rank, inst.girl_rank
    for rho in rotations:
        r = len(rho.pairs)
        for i, (b, g_from) in enumerate(rho.pairs):
            g_to = rho.pairs[(i + 1) % r][1]
            lo, hi = boy_rank[b][g_from], boy_rank[b][g_to]
            for g in inst.boy_prefs[b][lo + 1 : hi]:
                threshold = girl_rank[g][b]
                if girl_rank[g][m0.partner_of_girl[g]] < threshold:
                    continue
                j = bisect_left(new_ranks[g], threshold) - 1
                if j < 0:
                    raise ContractViolation(
                        f"girl {g + 1} never crosses boy {b + 1} yet a rotation skips her"
                    )
                old_rank, rid = events[g][j]
                if old_rank <= threshold or rid == rho.id:
                    raise ContractViolation("inconsistent girl crossing event")
                edges.add((rid, rho.id))

    k = len(rotations)
    preds: list[set[int]] = [set() for _ in range(k)]
    succs: list[set[int]] = [set() for _ in range(k)]
    for a, b in edges:
        preds[b].add(a)
        succs[a].add(b)
    indegree = [len(p) for p in preds]
    ready = [r for r in range(k) if indegree[r] == 0]
    heap: list[int] = []
    for r in ready:
        heappush(heap, r)
    topo: list[int] = []
    while heap:
        r = heappop(heap)
        topo.append(r)
        for nxt in succs[r]:
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                heappush(heap, nxt)
    if len(topo) != k:
        raise ContractViolation("precedence arcs contain a cycle")
    return RotationPoset(
        rotations=rotations,
        edges=frozenset(edges),
        moves_to=moves_to,
        moves_from=moves_from,
        preds=tuple(frozenset(p) for p in preds),
        topo_order=tuple(topo),
    )


def closed_set_to_matching(
    inst: Instance, poset: RotationPoset, closed: Iterable[int]
) -> Matching:
    """Eliminate exactly the rotations in ``closed`` from the boy-optimal
    matching, in precedence order.  Raises ContractViolation when the set
    is not predecessor-closed."""
    members = frozenset(closed)
    for rid in members:
        if not 0 <= rid < len(poset.rotations):
            raise ValueError(f"rotation id {rid} out of range")
    if not poset.is_closed(members):
        raise ContractViolation("rotation set is not predecessor-closed")
    walk = _ChainWalk(inst, gale_shapley(inst, "boys"))
    for rid in poset.topo_order:
        if rid in members:
            walk.apply_cycle(poset.rotations[rid].pairs)
    return walk.matching()


def all_closed_sets(
    poset: RotationPoset, cap: int
) -> tuple[list[frozenset[int]], bool]:
    """All predecessor-closed rotation subsets, by size then lexicographic,
    truncated after ``cap`` results."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    out: list[frozenset[int]] = []
    truncated = False
    for ideal in iter_ideals(len(poset.rotations), poset.preds):
        if len(out) == cap:
            truncated = True
            break
        out.append(ideal)
    return out, truncated
