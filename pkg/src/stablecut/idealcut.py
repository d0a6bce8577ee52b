"""Maximum-weight ideal cuts in a weighted DAG via lower-bounded min flow.

An ideal cut is a vertex set S with the source inside, the sink outside,
and no edge entering S; its weight is the total weight of edges leaving S.
The maximum-weight cut equals the minimum value of a flow that must carry
at least w(e) units on every edge e (weights may be negative), and the
strongly connected components of the optimal flow's residual graph encode
every maximum cut at once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple

from .core import ContractViolation, ParseError, _content_lines, _parse_decimal, _ENTRY_LIMIT
from .ideals import iter_ideals


class Edge(NamedTuple):
    tail: int
    head: int
    weight: int


@dataclass(frozen=True, eq=False)
class WeightedDag:
    """A directed graph with integer edge weights scaled by a power of ten.

    Parallel edges are kept distinct; self-loops are rejected.  Vertices
    are 0-based internally and 1-based in files and reports.
    """

    num_vertices: int
    source: int
    sink: int
    edges: tuple[Edge, ...]
    scale: int = 1

    def __post_init__(self) -> None:
        if self.num_vertices < 2:
            raise ValueError("graph needs at least a source and a sink")
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for v in (self.source, self.sink):
            if not 0 <= v < self.num_vertices:
                raise ValueError(f"vertex {v + 1} out of range")
        for e in self.edges:
            if not (0 <= e.tail < self.num_vertices and 0 <= e.head < self.num_vertices):
                raise ValueError("edge endpoint out of range")
            if e.tail == e.head:
                raise ValueError(f"self-loop at vertex {e.tail + 1}")

    @cached_property
    def out_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices leaving each vertex, ordered by head id then index."""
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for i, e in enumerate(self.edges):
            adj[e.tail].append(i)
        for lst in adj:
            lst.sort(key=lambda i: (self.edges[i].head, i))
        return tuple(tuple(lst) for lst in adj)

    @cached_property
    def in_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices entering each vertex, ordered by tail id then index."""
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for i, e in enumerate(self.edges):
            adj[e.head].append(i)
        for lst in adj:
            lst.sort(key=lambda i: (self.edges[i].tail, i))
        return tuple(tuple(lst) for lst in adj)


@dataclass(frozen=True)
class IdealCut:
    source_side: frozenset[int]


@dataclass(frozen=True)
class Flow:
    """Per-edge flow values (scaled integers) and the net source-to-sink
    value, which may be negative."""

    edge_flow: tuple[int, ...]
    value: int


class ResidualArc(NamedTuple):
    tail: int
    head: int
    capacity: int
    backward: bool
    edge: int


@dataclass(frozen=True, eq=False)
class ResidualGraph:
    """Residual structure of a flow: one forward arc per edge with the big
    finite capacity, plus a backward arc wherever the flow sits strictly
    above the edge's lower bound."""

    num_vertices: int
    arcs: tuple[ResidualArc, ...]

    @cached_property
    def out_arcs(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.num_vertices)]
        for i, arc in enumerate(self.arcs):
            adj[arc.tail].append(i)
        return tuple(tuple(lst) for lst in adj)

    def reachable(self, start: int) -> frozenset[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for i in self.out_arcs[v]:
                head = self.arcs[i].head
                if head not in seen:
                    seen.add(head)
                    queue.append(head)
        return frozenset(seen)


@dataclass(frozen=True, eq=False)
class CondensedDag:
    """Strongly connected components of a residual graph, listed in
    topological order, with the deduplicated arcs between them."""

    components: tuple[frozenset[int], ...]
    edges: frozenset[tuple[int, int]]
    source_component: int
    sink_component: int

    def component_of(self, vertex: int) -> int:
        for i, comp in enumerate(self.components):
            if vertex in comp:
                return i
        raise ValueError(f"vertex {vertex + 1} not in any component")


def big_capacity(g: WeightedDag) -> int:
    """Finite stand-in for infinity on forward residual arcs.

    One more than the total absolute weight: any single augmenting path
    can be charged against distinct units of that total, so no forward arc
    ever needs more.
    """
    return 1 + sum(abs(e.weight) for e in g.edges)


def validate_dag(g: WeightedDag) -> None:
    """Check acyclicity and that every vertex lies on a source-to-sink path;
    errors name a witness cycle or vertex."""
    n = g.num_vertices
    indegree = [0] * n
    for e in g.edges:
        indegree[e.head] += 1
    queue = deque(v for v in range(n) if indegree[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for i in g.out_edges[v]:
            head = g.edges[i].head
            indegree[head] -= 1
            if indegree[head] == 0:
                queue.append(head)
    if seen != n:
        # Every vertex still holding in-degree has an unprocessed
        # predecessor in the same set, so walking backwards must loop.
        remaining = {v for v in range(n) if indegree[v] > 0}
        start = min(remaining)
        walk = [start]
        pos = {start: 0}
        v = start
        while True:
            u = next(
                g.edges[i].tail
                for i in g.in_edges[v]
                if g.edges[i].tail in remaining
            )
            if u in pos:
                loop = walk[pos[u]:]
                break
            pos[u] = len(walk)
            walk.append(u)
            v = u
        cycle = [x + 1 for x in reversed(loop)]
        raise ValueError(f"graph has a cycle through vertices {cycle}")

    forward = {g.source}
    queue = deque([g.source])
    while queue:
        v = queue.popleft()
        for i in g.out_edges[v]:
            head = g.edges[i].head
            if head not in forward:
                forward.add(head)
                queue.append(head)
    for v in range(n):
        if v not in forward:
            raise ValueError(f"vertex {v + 1} is not reachable from the source")
    backward = {g.sink}
    queue = deque([g.sink])
    while queue:
        v = queue.popleft()
        for i in g.in_edges[v]:
            tail = g.edges[i].tail
            if tail not in backward:
                backward.add(tail)
                queue.append(tail)
    for v in range(n):
        if v not in backward:
            raise ValueError(f"vertex {v + 1} cannot reach the sink")


def check_ideal_cut(g: WeightedDag, source_side: frozenset[int]) -> None:
    if g.source not in source_side:
        raise ValueError("cut must contain the source")
    if g.sink in source_side:
        raise ValueError("cut must exclude the sink")
    for v in source_side:
        if not 0 <= v < g.num_vertices:
            raise ValueError(f"vertex {v + 1} out of range")
    for e in g.edges:
        if e.head in source_side and e.tail not in source_side:
            raise ValueError(
                f"edge ({e.tail + 1}, {e.head + 1}) enters the cut"
            )


def cut_weight(g: WeightedDag, cut: IdealCut) -> int:
    """Total weight of the edges leaving the cut's source side."""
    side = cut.source_side
    check_ideal_cut(g, side)
    return sum(e.weight for e in g.edges if e.tail in side and e.head not in side)


def _bfs_tree_from(g: WeightedDag, root: int) -> list[int]:
    """parent_edge[v]: edge index that first reaches v from the root, -1 at
    the root and for unreached vertices.  Neighbours are scanned in
    ascending head order, so paths break ties toward low vertex ids."""
    parent_edge = [-1] * g.num_vertices
    seen = [False] * g.num_vertices
    seen[root] = True
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for i in g.out_edges[v]:
            head = g.edges[i].head
            if not seen[head]:
                seen[head] = True
                parent_edge[head] = i
                queue.append(head)
    return parent_edge


def _bfs_tree_to(g: WeightedDag, root: int) -> list[int]:
    """child_edge[v]: first edge of a shortest v-to-root path, -1 at root."""
    child_edge = [-1] * g.num_vertices
    seen = [False] * g.num_vertices
    seen[root] = True
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for i in g.in_edges[v]:
            tail = g.edges[i].tail
            if not seen[tail]:
                seen[tail] = True
                child_edge[tail] = i
                queue.append(tail)
    return child_edge


def feasible_flow(g: WeightedDag) -> Flow:
    """A flow meeting every lower bound: for each edge demanding w > 0 units,
    push w along a source-to-sink path through it.  Flow only ever grows,
    so every edge stays satisfied once handled."""
    validate_dag(g)
    from_source = _bfs_tree_from(g, g.source)
    to_sink = _bfs_tree_to(g, g.sink)
    flow = [0] * len(g.edges)
    for idx, e in enumerate(g.edges):
        if e.weight > 0 and flow[idx] < e.weight:
            path = [idx]
            v = e.tail
            while v != g.source:
                back = from_source[v]
                path.append(back)
                v = g.edges[back].tail
            v = e.head
            while v != g.sink:
                fwd = to_sink[v]
                path.append(fwd)
                v = g.edges[fwd].head
            for p in path:
                flow[p] += e.weight
    for idx, e in enumerate(g.edges):
        if flow[idx] < e.weight:
            raise ContractViolation("constructed flow misses a lower bound")
    value = sum(flow[i] for i in g.out_edges[g.source]) - sum(
        flow[i] for i in g.in_edges[g.source]
    )
    return Flow(tuple(flow), value)


def residual(g: WeightedDag, f: Flow) -> ResidualGraph:
    """Residual graph of f: forward arcs always usable (big capacity),
    backward arcs where flow exceeds the lower bound.  Arc order is forward
    by edge index, then backward by edge index."""
    big = big_capacity(g)
    arcs = [ResidualArc(e.tail, e.head, big, False, i) for i, e in enumerate(g.edges)]
    for i, e in enumerate(g.edges):
        slack = f.edge_flow[i] - e.weight
        if slack > 0:
            arcs.append(ResidualArc(e.head, e.tail, slack, True, i))
    return ResidualGraph(g.num_vertices, tuple(arcs))


def _assert_conservation(g: WeightedDag, flow: list[int]) -> None:
    for v in range(g.num_vertices):
        if v in (g.source, g.sink):
            continue
        inflow = sum(flow[i] for i in g.in_edges[v])
        outflow = sum(flow[i] for i in g.out_edges[v])
        if inflow != outflow:
            raise ContractViolation(f"flow conservation fails at vertex {v + 1}")


def min_flow(g: WeightedDag) -> Flow:
    """Minimum-value flow subject to f(e) >= w(e) on every edge.

    Starts from a feasible flow and pushes the largest possible flow from
    sink back to source through the residual graph with shortest
    breadth-first augmenting paths, folding each augmentation into the
    edge flows.  The result's value equals the maximum ideal cut weight.
    """
    base = feasible_flow(g)
    big = big_capacity(g)
    num_edges = len(g.edges)

    # Arc arrays: each arc is paired with its undo arc at index ^1.  Signs
    # say how one unit on the arc changes the underlying edge's flow.
    heads: list[int] = []
    caps: list[int] = []
    of_edge: list[int] = []
    sign: list[int] = []
    adj: list[list[int]] = [[] for _ in range(g.num_vertices)]

    def add_pair(u: int, v: int, cap: int, edge: int, direction: int) -> None:
        adj[u].append(len(heads))
        heads.append(v)
        caps.append(cap)
        of_edge.append(edge)
        sign.append(direction)
        adj[v].append(len(heads))
        heads.append(u)
        caps.append(0)
        of_edge.append(edge)
        sign.append(-direction)

    for i, e in enumerate(g.edges):
        add_pair(e.tail, e.head, big, i, +1)
    for i, e in enumerate(g.edges):
        slack = base.edge_flow[i] - e.weight
        if slack > 0:
            add_pair(e.head, e.tail, slack, i, -1)

    composed = list(base.edge_flow)
    pushed_total = 0
    while True:
        parent_arc = [-1] * g.num_vertices
        parent_arc[g.sink] = -2
        queue = deque([g.sink])
        while queue:
            v = queue.popleft()
            if v == g.source:
                break
            for a in adj[v]:
                if caps[a] > 0 and parent_arc[heads[a]] == -1:
                    parent_arc[heads[a]] = a
                    queue.append(heads[a])
        if parent_arc[g.source] < 0:
            break
        path = []
        v = g.source
        while v != g.sink:
            a = parent_arc[v]
            path.append(a)
            v = heads[a ^ 1]
        bottleneck = min(caps[a] for a in path)
        for a in path:
            caps[a] -= bottleneck
            caps[a ^ 1] += bottleneck
            edge = of_edge[a]
            composed[edge] += sign[a] * bottleneck
            if composed[edge] < g.edges[edge].weight:
                raise ContractViolation("augmentation broke a lower bound")
        pushed_total += bottleneck

    _assert_conservation(g, composed)
    value = sum(composed[i] for i in g.out_edges[g.source]) - sum(
        composed[i] for i in g.in_edges[g.source]
    )
    if value != base.value - pushed_total:
        raise ContractViolation("composed flow value is inconsistent")
    result = Flow(tuple(composed), value)
    # Optimality certificate: with the flow minimal, the sink can no longer
    # reach the source through the residual graph.
    if g.source in residual(g, result).reachable(g.sink):
        raise ContractViolation("residual still connects sink to source")
    return result


def max_weight_ideal_cut(g: WeightedDag) -> tuple[IdealCut, int]:
    """The maximum-weight ideal cut with the largest source side, plus its
    weight.  The weight always equals the minimum flow value."""
    f = min_flow(g)
    res = residual(g, f)
    sink_side = res.reachable(g.sink)
    cut = IdealCut(frozenset(range(g.num_vertices)) - sink_side)
    weight = cut_weight(g, cut)
    if weight != f.value:
        raise ContractViolation("cut weight does not match the flow value")
    return cut, weight


def _tarjan_components(res: ResidualGraph) -> list[list[int]]:
    """Strongly connected components, iterative Tarjan, in reverse
    topological order of the condensation."""
    n = res.num_vertices
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            arcs = res.out_arcs[v]
            while pos < len(arcs):
                head = res.arcs[arcs[pos]].head
                pos += 1
                if index[head] == -1:
                    work.append((v, pos))
                    work.append((head, 0))
                    advanced = True
                    break
                if on_stack[head]:
                    low[v] = min(low[v], index[head])
            if advanced:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                components.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return components


def condense(g: WeightedDag, f: Flow) -> CondensedDag:
    """Shrink the residual graph of an optimal flow to its component DAG.

    The ideal cuts of the result, pulled back to vertex sets, are exactly
    the maximum-weight ideal cuts of g.  Requires f optimal; raises
    ContractViolation otherwise.
    """
    res = residual(g, f)
    if g.source in res.reachable(g.sink):
        raise ContractViolation("flow is not optimal: sink reaches source")
    comps = list(reversed(_tarjan_components(res)))
    comp_of = [0] * g.num_vertices
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    edges = {
        (comp_of[arc.tail], comp_of[arc.head])
        for arc in res.arcs
        if comp_of[arc.tail] != comp_of[arc.head]
    }
    return CondensedDag(
        components=tuple(frozenset(c) for c in comps),
        edges=frozenset(edges),
        source_component=comp_of[g.source],
        sink_component=comp_of[g.sink],
    )


def _component_preds(d: CondensedDag) -> list[frozenset[int]]:
    preds: list[set[int]] = [set() for _ in d.components]
    for a, b in d.edges:
        preds[b].add(a)
    return [frozenset(p) for p in preds]


def enumerate_max_cuts(d: CondensedDag, cap: int) -> tuple[list[IdealCut], bool]:
    """All maximum-weight ideal cuts of the original graph, by source-side
    size then lexicographic, truncated after ``cap`` results.

    In the component DAG the source component is the unique minimum and the
    sink component the unique maximum, so every closed component subset
    other than the empty and the full one is a valid cut.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    count = len(d.components)
    preds = _component_preds(d)
    full = frozenset(range(count))
    out: list[IdealCut] = []
    truncated = False
    for ideal in iter_ideals(count, preds):
        if not ideal or ideal == full:
            continue
        if d.source_component not in ideal or d.sink_component in ideal:
            raise ContractViolation("component ideal violates the cut poles")
        if len(out) == cap:
            truncated = True
            break
        vertices: set[int] = set()
        for ci in ideal:
            vertices |= d.components[ci]
        out.append(IdealCut(frozenset(vertices)))
    return out, truncated


def iterate_ideal_cuts(g: WeightedDag) -> Iterator[IdealCut]:
    """Generate every ideal cut of a validated DAG, smallest source side
    first.  The count can be exponential; callers bound consumption."""
    preds = [
        frozenset(g.edges[i].tail for i in g.in_edges[v])
        for v in range(g.num_vertices)
    ]
    full = frozenset(range(g.num_vertices))
    for ideal in iter_ideals(g.num_vertices, preds):
        if not ideal or ideal == full:
            continue
        yield IdealCut(ideal)


def parse_dag(text: str) -> WeightedDag:
    """Parse the V E / s t / edge-list format with decimal edge weights.

    Vertex ids are 1-based in the file.  Edge weights share one
    power-of-ten scale; parallel edges stay distinct.
    """
    lines = _content_lines(text)
    if len(lines) < 2:
        raise ParseError("line 1: missing graph header")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2:
        raise ParseError(f"line {lineno}: expected 'V E'")
    try:
        num_vertices, num_edges = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"line {lineno}: expected 'V E'") from None
    if num_vertices < 2:
        raise ParseError(f"line {lineno}: need at least two vertices")
    if num_edges < 0:
        raise ParseError(f"line {lineno}: negative edge count")
    lineno, pole_line = lines[1]
    parts = pole_line.split()
    if len(parts) != 2:
        raise ParseError(f"line {lineno}: expected 's t'")
    try:
        source, sink = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"line {lineno}: expected 's t'") from None
    for v in (source, sink):
        if not 1 <= v <= num_vertices:
            raise ParseError(f"line {lineno}: vertex {v} out of range 1..{num_vertices}")
    if source == sink:
        raise ParseError(f"line {lineno}: source and sink must differ")
    rows = lines[2:]
    if len(rows) != num_edges:
        raise ParseError(f"expected {num_edges} edge rows, found {len(rows)}")
    raw = []
    for lineno, line in rows:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'u v w'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed edge endpoints") from None
        for x in (u, v):
            if not 1 <= x <= num_vertices:
                raise ParseError(f"line {lineno}: vertex {x} out of range 1..{num_vertices}")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        try:
            value, d = _parse_decimal(parts[2])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        raw.append((lineno, u - 1, v - 1, value, d))
    digits = max((d for *_, d in raw), default=0)
    edges = []
    for lineno, u, v, value, d in raw:
        scaled = value * 10 ** (digits - d)
        if abs(scaled) > _ENTRY_LIMIT:
            raise ParseError(f"line {lineno}: weight exceeds the 64-bit range after scaling")
        edges.append(Edge(u, v, scaled))
    return WeightedDag(num_vertices, source - 1, sink - 1, tuple(edges), 10**digits)
