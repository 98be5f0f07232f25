"""Directed-graph substrate shared by every other module.

Vertices are 1-based integers.  A graph constructed from a vertex count ``n``
uses ids 1..n; deletion keeps the surviving ids unchanged, so vertex sets may
be sparse and solutions map back to the original instance without translation
tables.  Arcs are ordered pairs (u, v) with u != v; duplicate arcs are
rejected, antiparallel pairs (u, v) and (v, u) are allowed (they model a pair
of parallel edges in the underlying undirected multigraph).

Orderings are plain tuples of distinct vertex ids; the empty tuple is the
empty ordering.  Vertex sets and arc-index sets are frozensets.
"""

from __future__ import annotations

import heapq
from collections import deque

from .errors import ParseError

VertexSet = frozenset
ArcSet = frozenset
Ordering = tuple


class DiGraph:
    """An immutable directed graph; all operations return new graphs."""

    __slots__ = ("_vertices", "_arcs", "_out", "_in", "_incident", "_index")

    def __init__(self, vertices, arcs=()):
        if isinstance(vertices, int):
            vertices = range(1, vertices + 1)
        vs = frozenset(int(v) for v in vertices)
        arc_list = tuple((int(u), int(v)) for u, v in arcs)
        seen = set()
        for u, v in arc_list:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in vs or v not in vs:
                raise ValueError(f"arc ({u},{v}) has an endpoint outside the vertex set")
            if (u, v) in seen:
                raise ValueError(f"duplicate arc ({u},{v})")
            seen.add((u, v))
        out = {v: [] for v in vs}
        inn = {v: [] for v in vs}
        incident = {v: [] for v in vs}
        for i, (u, v) in enumerate(arc_list):
            out[u].append(v)
            inn[v].append(u)
            incident[u].append(i)
            incident[v].append(i)
        self._vertices = vs
        self._arcs = arc_list
        self._out = {v: tuple(sorted(ws)) for v, ws in out.items()}
        self._in = {v: tuple(sorted(ws)) for v, ws in inn.items()}
        self._incident = {v: tuple(ws) for v, ws in incident.items()}
        self._index = {a: i for i, a in enumerate(arc_list)}

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def arcs(self) -> tuple:
        return self._arcs

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._arcs)

    def out_neighbors(self, v) -> tuple:
        return self._out[v]

    def in_neighbors(self, v) -> tuple:
        return self._in[v]

    def neighbors(self, v) -> tuple:
        """Underlying-undirected neighbors, each listed once, sorted."""
        return tuple(sorted(set(self._out[v]) | set(self._in[v])))

    def incident_arcs(self, v) -> tuple:
        """Indices of arcs having v as an endpoint, in arc order."""
        return self._incident[v]

    def arc_index(self, u, v):
        return self._index.get((u, v))

    def has_arc(self, u, v) -> bool:
        return (u, v) in self._index

    def __eq__(self, other):
        if not isinstance(other, DiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._arcs == other._arcs

    def __hash__(self):
        return hash((self._vertices, self._arcs))

    def __repr__(self):
        return f"DiGraph({sorted(self._vertices)!r}, {list(self._arcs)!r})"


def parse_digraph(text: str) -> DiGraph:
    """Parse the digraph file format, discarding any embedding section."""
    return parse_digraph_and_rotations(text)[0]


def parse_digraph_and_rotations(text: str):
    """Parse the digraph file format.

    Returns (graph, rotations) where rotations is None when the file has no
    embedding section, else a dict mapping each vertex to the clockwise tuple
    of incident arc indices.  In the file, rotations list neighbor ids; a
    neighbor appearing twice (antiparallel pair) is matched to the two
    parallel arcs in increasing arc-index order.
    """
    lines = text.splitlines()
    data = [(i + 1, ln.strip()) for i, ln in enumerate(lines)
            if ln.strip() and not ln.lstrip().startswith("%")]
    if not data:
        raise ParseError("empty input")
    pos = 0
    lineno, header = data[pos]
    pos += 1
    fields = header.split()
    if len(fields) != 2:
        raise ParseError(f"header must be 'n m', got {header!r}", lineno)
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError(f"header must be 'n m', got {header!r}", lineno) from None
    if n < 0 or m < 0:
        raise ParseError("negative counts in header", lineno)
    arcs = []
    seen = set()
    for _ in range(m):
        if pos >= len(data):
            raise ParseError(f"expected {m} arc lines, got {len(arcs)}")
        lineno, ln = data[pos]
        pos += 1
        fields = ln.split()
        if len(fields) != 2:
            raise ParseError(f"arc line must be 'u v', got {ln!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"arc line must be 'u v', got {ln!r}", lineno) from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"arc endpoint out of range 1..{n}: ({u},{v})", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate arc ({u},{v})", lineno)
        seen.add((u, v))
        arcs.append((u, v))
    g = DiGraph(n, arcs)
    if pos >= len(data):
        return g, None
    lineno, ln = data[pos]
    if ln != "embedding":
        raise ParseError(f"unexpected trailing content {ln!r}", lineno)
    pos += 1
    neighbor_rot = {}
    for _ in range(n):
        if pos >= len(data):
            raise ParseError("embedding section must list every vertex")
        lineno, ln = data[pos]
        pos += 1
        fields = ln.split()
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"bad embedding line {ln!r}", lineno) from None
        if len(nums) < 2 or len(nums) != 2 + nums[1]:
            raise ParseError(f"embedding line must be 'v d w1 ... wd', got {ln!r}", lineno)
        v, d = nums[0], nums[1]
        if v in neighbor_rot:
            raise ParseError(f"vertex {v} listed twice in embedding", lineno)
        if not 1 <= v <= n:
            raise ParseError(f"embedding vertex {v} out of range", lineno)
        neighbor_rot[v] = (lineno, nums[2:])
    if pos < len(data):
        raise ParseError("unexpected content after embedding section", data[pos][0])
    rotations = {}
    for v in range(1, n + 1):
        lineno, ws = neighbor_rot.get(v, (None, []))
        remaining = {}
        for i in g.incident_arcs(v):
            a, b = g.arcs[i]
            w = b if a == v else a
            remaining.setdefault(w, deque()).append(i)
        slots = []
        for w in ws:
            if w not in remaining or not remaining[w]:
                raise ParseError(
                    f"rotation of vertex {v} names {w}, not an (unused) neighbor", lineno)
            slots.append(remaining[w].popleft())
        if any(q for q in remaining.values()):
            raise ParseError(f"rotation of vertex {v} misses incident edges", lineno)
        rotations[v] = tuple(slots)
    return g, rotations


def write_digraph(g: DiGraph, rotations=None) -> str:
    """Serialize to the digraph file format (vertices must be dense 1..n)."""
    if g.vertices != frozenset(range(1, g.n + 1)):
        raise ValueError("only dense 1..n vertex sets serialize to the file format")
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.arcs)
    if rotations is not None:
        out.append("embedding")
        for v in range(1, g.n + 1):
            ws = []
            for i in rotations.get(v, ()):
                a, b = g.arcs[i]
                ws.append(b if a == v else a)
            out.append(" ".join([str(v), str(len(ws))] + [str(w) for w in ws]))
    return "\n".join(out) + "\n"


def topological_order(g: DiGraph):
    """Smallest-id-first topological ordering, or None if g has a cycle."""
    indeg = {v: len(g.in_neighbors(v)) for v in g.vertices}
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in g.out_neighbors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != g.n:
        return None
    return tuple(order)


def is_acyclic(g: DiGraph) -> bool:
    return topological_order(g) is not None


def reachable_from(g: DiGraph, s) -> frozenset:
    """All vertices reachable from s by a directed path (including s)."""
    seen = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for w in g.out_neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def reachability(g: DiGraph, t) -> frozenset:
    """The reachability relation on t: pairs (s, u) with a directed s->u path.

    Paths of length 0 count, so the result is reflexive on t; it is transitive
    because path concatenation is.
    """
    ts = frozenset(t)
    if not ts <= g.vertices:
        raise ValueError("t must be a subset of the graph's vertices")
    pairs = set()
    for s in ts:
        reach = reachable_from(g, s)
        pairs.update((s, u) for u in ts & reach)
    return frozenset(pairs)


def delete(g: DiGraph, x=frozenset(), y=frozenset()) -> DiGraph:
    """Remove arc indices y, then vertices x with all incident arcs.

    Surviving vertices keep their ids; arc indices are re-packed.
    """
    xs = frozenset(x)
    ys = frozenset(y)
    if not xs <= g.vertices:
        raise ValueError("x must be a subset of the graph's vertices")
    for i in ys:
        if not 0 <= i < g.m:
            raise ValueError(f"arc index {i} out of range")
    arcs = [a for i, a in enumerate(g.arcs)
            if i not in ys and a[0] not in xs and a[1] not in xs]
    return DiGraph(g.vertices - xs, arcs)


def bridge_arcs(g: DiGraph) -> frozenset:
    """Arc indices that are bridges of the underlying undirected multigraph.

    An antiparallel pair is two parallel undirected edges, hence never a
    bridge.
    """
    disc = {}
    low = {}
    bridges = set()
    counter = 0
    for root in sorted(g.vertices):
        if root in disc:
            continue
        # iterative DFS; entries are (vertex, arc index used to enter, edge iterator)
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(g.incident_arcs(root)))]
        while stack:
            v, in_arc, it = stack[-1]
            advanced = False
            for i in it:
                if i == in_arc:
                    continue
                a, b = g.arcs[i]
                w = b if a == v else a
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, i, iter(g.incident_arcs(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        bridges.add(in_arc)
    return frozenset(bridges)


def bridges_and_components(g: DiGraph):
    """Delete all underlying bridges, split into weakly connected pieces.

    Returns a list of (piece, arc_map) pairs ordered by smallest vertex id;
    piece vertices keep their original ids and arc_map[i] gives the original
    arc index of the piece's i-th arc.  Every piece is connected and
    bridgeless, and the DFVS/DFAS optimum of g is the sum over pieces.
    """
    bridges = bridge_arcs(g)
    comp = {}
    for root in sorted(g.vertices):
        if root in comp:
            continue
        comp[root] = root
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for i in g.incident_arcs(v):
                if i in bridges:
                    continue
                a, b = g.arcs[i]
                w = b if a == v else a
                if w not in comp:
                    comp[w] = root
                    queue.append(w)
    pieces = []
    for root in sorted(set(comp.values())):
        vs = [v for v, r in comp.items() if r == root]
        idx = [i for i, (u, v) in enumerate(g.arcs)
               if i not in bridges and comp[u] == root]
        piece = DiGraph(vs, [g.arcs[i] for i in idx])
        pieces.append((piece, tuple(idx)))
    return pieces
