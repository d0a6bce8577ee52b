"""Reduction from weighted stable matching to maximum-weight ideal cut.

The cut graph has one vertex per rotation between artificial source and
sink.  Every stable pair that is matched in some but not all stable
matchings gets a directed path whose endpoints encode when the pair is
present; adding the pair's weight to each path edge makes every ideal
cut weigh exactly as much as the stable matching it selects, up to a
constant for the pairs present everywhere.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .core import ContractViolation, Instance, Matching, WeightFunction, gale_shapley, matching_weight
from .idealcut import Edge, IdealCut, WeightedDag, check_ideal_cut, cut_weight, max_weight_ideal_cut, validate_dag
from .rotations import RotationPoset, build_poset, closed_set_to_matching

Pair = tuple[int, int]


@dataclass(frozen=True)
class UniqueMatching:
    """Sentinel for instances with exactly one stable matching: no cut graph
    is built and the answer is already known."""

    matching: Matching
    weight: int
    scale: int


@dataclass(frozen=True, eq=False)
class ReductionArtifacts:
    """The cut graph plus everything needed to translate answers back.

    ``dag`` vertex 0 is the source, vertex ``len(rotations) + 1`` the sink,
    and rotation r sits at vertex r + 1.  ``path_of_pair`` maps each stable
    pair that varies across matchings to the edge indices of its path.
    ``base_weight`` is the total weight of pairs present in every stable
    matching and must be added to any cut weight.
    """

    inst: Instance
    weights: WeightFunction
    poset: RotationPoset
    dag: WeightedDag
    path_of_pair: Mapping[Pair, tuple[int, ...]]
    base_weight: int
    vertex_of_rotation: tuple[int, ...]
    rotation_of_vertex: Mapping[int, int]


def _shortest_path_edges(
    dag_adj: tuple[tuple[int, ...], ...], edges: list[Edge], start: int, goal: int
) -> tuple[int, ...]:
    """Breadth-first shortest edge path, ties toward low vertex ids."""
    if start == goal:
        return ()
    parent_edge = {start: -1}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == goal:
            break
        for i in dag_adj[v]:
            head = edges[i].head
            if head not in parent_edge:
                parent_edge[head] = i
                queue.append(head)
    if goal not in parent_edge:
        raise ContractViolation("required path is missing from the cut graph")
    path = []
    v = goal
    while v != start:
        i = parent_edge[v]
        path.append(i)
        v = edges[i].tail
    path.reverse()
    return tuple(path)


def build_reduction(
    inst: Instance, w: WeightFunction, poset: RotationPoset | None = None
) -> ReductionArtifacts | UniqueMatching:
    """Build the weighted cut graph for an instance.

    Returns a :class:`UniqueMatching` sentinel when the rotation poset is
    empty.  A precomputed poset may be passed to avoid rebuilding it.
    """
    if w.n != inst.n:
        raise ValueError("weight table size does not match the instance")
    if poset is None:
        poset = build_poset(inst)
    m0 = gale_shapley(inst, "boys")
    if not poset.rotations:
        return UniqueMatching(m0, matching_weight(m0, w), w.scale)
    mz = gale_shapley(inst, "girls")
    k = len(poset.rotations)
    source, sink = 0, k + 1
    vertex_of_rotation = tuple(rid + 1 for rid in range(k))

    has_pred = {b for _, b in poset.edges}
    has_succ = {a for a, _ in poset.edges}
    edge_list: list[Edge] = []
    for rid in range(k):
        if rid not in has_pred:
            edge_list.append(Edge(source, vertex_of_rotation[rid], 0))
    for a, b in sorted(poset.edges):
        edge_list.append(Edge(vertex_of_rotation[a], vertex_of_rotation[b], 0))
    for rid in range(k):
        if rid not in has_succ:
            edge_list.append(Edge(vertex_of_rotation[rid], sink, 0))

    adj: list[list[int]] = [[] for _ in range(k + 2)]
    for i, e in enumerate(edge_list):
        adj[e.tail].append(i)
    for lst in adj:
        lst.sort(key=lambda i: (edge_list[i].head, i))
    dag_adj = tuple(tuple(lst) for lst in adj)

    path_cache: dict[tuple[int, int], tuple[int, ...]] = {}

    def path_between(a: int, b: int) -> tuple[int, ...]:
        key = (a, b)
        if key not in path_cache:
            path_cache[key] = _shortest_path_edges(dag_adj, edge_list, a, b)
        return path_cache[key]

    # Stable pairs that can vary are the boy-optimal pairs plus every pair
    # some rotation creates; a pair present in both extreme matchings is
    # present everywhere and only shifts the total by a constant.
    base_weight = 0
    accumulated = [0] * len(edge_list)
    path_of_pair: dict[Pair, tuple[int, ...]] = {}

    def add_pair(pair: Pair, path: tuple[int, ...]) -> None:
        path_of_pair[pair] = path
        weight = w.table[pair[0]][pair[1]]
        for i in path:
            accumulated[i] += weight

    for b, g in m0.pairs():
        if mz.partner_of_boy[b] == g:
            base_weight += w.table[b][g]
            continue
        rid = poset.moves_from.get((b, g))
        if rid is None:
            raise ContractViolation("boy-optimal pair has no removing rotation")
        add_pair((b, g), path_between(source, vertex_of_rotation[rid]))
    for rho in poset.rotations:
        r = len(rho.pairs)
        for i, (b, _) in enumerate(rho.pairs):
            g = rho.pairs[(i + 1) % r][1]
            if mz.partner_of_boy[b] == g:
                add_pair((b, g), path_between(vertex_of_rotation[rho.id], sink))
                continue
            taker = poset.moves_from.get((b, g))
            if taker is None:
                raise ContractViolation("transient pair has no removing rotation")
            add_pair(
                (b, g),
                path_between(vertex_of_rotation[rho.id], vertex_of_rotation[taker]),
            )

    weighted = tuple(
        Edge(e.tail, e.head, acc) for e, acc in zip(edge_list, accumulated)
    )
    dag = WeightedDag(k + 2, source, sink, weighted, w.scale)
    validate_dag(dag)
    return ReductionArtifacts(
        inst=inst,
        weights=w,
        poset=poset,
        dag=dag,
        path_of_pair=path_of_pair,
        base_weight=base_weight,
        vertex_of_rotation=vertex_of_rotation,
        rotation_of_vertex={v: rid for rid, v in enumerate(vertex_of_rotation)},
    )


def cut_to_matching(
    art: ReductionArtifacts, poset: RotationPoset, cut: IdealCut
) -> Matching:
    """Translate an ideal cut of the reduction graph into the stable
    matching generated by the rotations on the cut's source side."""
    check_ideal_cut(art.dag, cut.source_side)
    closed = frozenset(
        art.rotation_of_vertex[v] for v in cut.source_side if v != art.dag.source
    )
    return closed_set_to_matching(art.inst, poset, closed)


def matching_weight_from_cut(art: ReductionArtifacts, cut: IdealCut) -> int:
    """Weight of the matching selected by the cut, computed on the cut side
    of the correspondence: cut weight plus the always-present base."""
    return cut_weight(art.dag, cut) + art.base_weight


def solve_max_weight(inst: Instance, w: WeightFunction) -> tuple[Matching, int]:
    """A maximum-weight stable matching and its scaled weight.

    Among equally heavy optima this returns the pole with the most
    rotations eliminated, which is the girl-favouring end of the optimal
    sublattice.
    """
    poset = build_poset(inst)
    art = build_reduction(inst, w, poset)
    if isinstance(art, UniqueMatching):
        return art.matching, art.weight
    cut, weight = max_weight_ideal_cut(art.dag)
    m = cut_to_matching(art, poset, cut)
    total = weight + art.base_weight
    if total != matching_weight(m, w):
        raise ContractViolation("cut weight does not transport to the matching")
    return m, total
