"""The sublattice of maximum-weight stable matchings.

Condensing the optimal flow's residual graph groups rotations into
meta-rotations.  Closed subsets of the meta-rotation poset that contain
the source element and avoid the sink element generate exactly the
maximum-weight stable matchings, so the optima inherit meet, join, and
two extreme poles from the full lattice.  Contracting the meta-rotations
inside a second weight's cut graph optimises that weight over the optima
of the first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import ContractViolation, Instance, Matching, WeightFunction, matching_weight
from .idealcut import Edge, WeightedDag, condense, max_weight_ideal_cut, min_flow, validate_dag
from .ideals import iter_ideals
from .reduction import ReductionArtifacts, UniqueMatching, build_reduction
from .rotations import RotationPoset, build_poset, closed_set_to_matching


@dataclass(frozen=True, eq=False)
class MetaRotationPoset:
    """Rotations grouped by residual component, with component precedence.

    ``rotation_sets[i]`` holds the rotation ids of element i; the source
    marker lives in ``s_element`` and the sink marker in ``t_element``
    (both elements may also hold rotations).  Every rotation belongs to
    exactly one element.
    """

    inst: Instance
    poset: RotationPoset
    rotation_sets: tuple[frozenset[int], ...]
    edges: frozenset[tuple[int, int]]
    s_element: int
    t_element: int

    def preds(self) -> list[frozenset[int]]:
        preds: list[set[int]] = [set() for _ in self.rotation_sets]
        for a, b in self.edges:
            preds[b].add(a)
        return [frozenset(p) for p in preds]


def meta_rotation_poset(
    inst: Instance, w: WeightFunction
) -> MetaRotationPoset | UniqueMatching:
    """Group rotations by how the optimal flow's residual connects them.

    Returns the :class:`UniqueMatching` sentinel when the instance has a
    single stable matching.
    """
    poset = build_poset(inst)
    art = build_reduction(inst, w, poset)
    if isinstance(art, UniqueMatching):
        return art
    flow = min_flow(art.dag)
    d = condense(art.dag, flow)
    if d.source_component == d.sink_component:
        raise ContractViolation("source and sink fell into one component")
    rotation_sets = tuple(
        frozenset(
            art.rotation_of_vertex[v]
            for v in comp
            if v not in (art.dag.source, art.dag.sink)
        )
        for comp in d.components
    )
    covered: set[int] = set()
    for group in rotation_sets:
        if covered & group:
            raise ContractViolation("a rotation appears in two meta-rotations")
        covered |= group
    if covered != set(range(len(poset.rotations))):
        raise ContractViolation("meta-rotations do not cover every rotation")
    return MetaRotationPoset(
        inst=inst,
        poset=poset,
        rotation_sets=rotation_sets,
        edges=d.edges,
        s_element=d.source_component,
        t_element=d.sink_component,
    )


def _elements_to_matching(p: MetaRotationPoset, subset: frozenset[int]) -> Matching:
    closed: set[int] = set()
    for i in subset:
        closed |= p.rotation_sets[i]
    return closed_set_to_matching(p.inst, p.poset, frozenset(closed))


def closed_subset_to_max_matching(
    p: MetaRotationPoset, subset: frozenset[int]
) -> Matching:
    """The maximum-weight matching generated by a closed subset of
    meta-rotations containing the source element and not the sink."""
    subset = frozenset(subset)
    for i in subset:
        if not 0 <= i < len(p.rotation_sets):
            raise ValueError(f"meta-rotation index {i} out of range")
    if p.s_element not in subset:
        raise ContractViolation("subset must contain the source element")
    if p.t_element in subset:
        raise ContractViolation("subset must not contain the sink element")
    preds = p.preds()
    if not all(preds[i] <= subset for i in subset):
        raise ContractViolation("subset is not predecessor-closed")
    return _elements_to_matching(p, subset)


def boy_optimal_max(p: MetaRotationPoset | UniqueMatching) -> Matching:
    """The optimum every boy weakly prefers: only the source element's
    rotations are eliminated."""
    if isinstance(p, UniqueMatching):
        return p.matching
    return closed_subset_to_max_matching(p, frozenset({p.s_element}))


def girl_optimal_max(p: MetaRotationPoset | UniqueMatching) -> Matching:
    """The optimum every girl weakly prefers: everything but the sink
    element is eliminated."""
    if isinstance(p, UniqueMatching):
        return p.matching
    subset = frozenset(range(len(p.rotation_sets))) - {p.t_element}
    return closed_subset_to_max_matching(p, subset)


def enumerate_max_matchings(
    p: MetaRotationPoset | UniqueMatching, cap: int
) -> tuple[list[Matching], bool]:
    """All maximum-weight stable matchings, deduplicated, with a truncation
    flag once ``cap`` results are out."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if isinstance(p, UniqueMatching):
        return [p.matching], False
    count = len(p.rotation_sets)
    preds = p.preds()
    full = frozenset(range(count))
    out: list[Matching] = []
    seen: set[tuple[int, ...]] = set()
    truncated = False
    for ideal in iter_ideals(count, preds):
        if not ideal or ideal == full:
            continue
        if len(out) == cap:
            truncated = True
            break
        m = _elements_to_matching(p, ideal)
        if m.partner_of_boy not in seen:
            seen.add(m.partner_of_boy)
            out.append(m)
    return out, truncated


def solve_bi_objective(
    inst: Instance, w1: WeightFunction, w2: WeightFunction
) -> tuple[Matching, int, int]:
    """Maximise w2 over the maximum-w1 stable matchings.

    Builds the meta-rotation poset for w1, rebuilds the cut graph with w2
    weights over the same rotation poset, contracts each meta-rotation to
    one vertex (dropping internal edges, keeping parallel edges between
    elements), and solves one more maximum-weight ideal cut.  Returns the
    matching with both scaled weights.
    """
    if w1.n != inst.n or w2.n != inst.n:
        raise ValueError("weight table size does not match the instance")
    p = meta_rotation_poset(inst, w1)
    if isinstance(p, UniqueMatching):
        m = p.matching
        return m, p.weight, matching_weight(m, w2)
    art2 = build_reduction(inst, w2, p.poset)
    assert isinstance(art2, ReductionArtifacts)

    element_of_vertex = {art2.dag.source: p.s_element, art2.dag.sink: p.t_element}
    for i, group in enumerate(p.rotation_sets):
        for rid in group:
            element_of_vertex[art2.vertex_of_rotation[rid]] = i
    contracted = []
    for e in art2.dag.edges:
        a, b = element_of_vertex[e.tail], element_of_vertex[e.head]
        if a != b:
            contracted.append(Edge(a, b, e.weight))
    merged = WeightedDag(
        num_vertices=len(p.rotation_sets),
        source=p.s_element,
        sink=p.t_element,
        edges=tuple(contracted),
        scale=w2.scale,
    )
    validate_dag(merged)
    cut, _ = max_weight_ideal_cut(merged)
    m = closed_subset_to_max_matching(p, cut.source_side)
    return m, matching_weight(m, w1), matching_weight(m, w2)
