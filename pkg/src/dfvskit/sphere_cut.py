"""Sphere-cut decompositions: type, validator, builders, preprocessing.

A sphere-cut decomposition is a rooted branch decomposition (root of degree
one, internal nodes of degree three, arcs of the graph at the leaves) where
every tree edge carries the boundary set of its split in cyclic order and a
noose certificate: a simple alternating vertex/face cycle of the radial
structure, visiting each face at most once, that separates the arcs below
the edge from the rest.

Nooses are stored as node sequences (v0, f0, v1, f1, ...); validation
resolves each consecutive incidence to a concrete corner of the embedding
and then flood-fills the arc dual minus those corners: a certificate is
accepted when some resolution yields exactly two components whose arc sets
are the two sides of the split (the Jordan check).  Everything is
combinatorial; no coordinates appear anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .digraph import DiGraph, bridge_arcs, bridges_and_components
from .embedding import Embedding, PlaneGraph, validate_embedding
from .errors import ParseError, ValidationError


@dataclass
class SphereCutDecomposition:
    parent: dict      # node -> parent node (root -> None)
    leaf_arc: dict    # leaf node -> arc index
    boundary: dict    # node -> cyclic vertex tuple of the edge to its parent
    noose: dict       # node -> node id sequence (v0, f0, v1, f1, ...), () at the root edge
    root: int

    @property
    def width(self) -> int:
        return max((len(b) for b in self.boundary.values()), default=0)

    def children(self):
        out = {x: [] for x in self.parent}
        for x, p in self.parent.items():
            if p is not None:
                out[p].append(x)
        return {x: tuple(sorted(c)) for x, c in out.items()}

    def nodes(self):
        return sorted(self.parent)

    def arcs_below(self):
        """E_down per node: arc indices at the leaves of each subtree."""
        kids = self.children()
        out = {}

        def fill(x):
            if x in self.leaf_arc:
                out[x] = frozenset([self.leaf_arc[x]])
            else:
                for c in kids[x]:
                    fill(c)
                out[x] = frozenset().union(*(out[c] for c in kids[x]))

        import sys
        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, 2 * len(self.parent) + 100))
        try:
            fill(self.root)
        finally:
            sys.setrecursionlimit(limit)
        return out


@dataclass
class ScReport:
    ok: bool
    width: int | None = None
    error: str | None = None


def _canonical_noose(tagged_nodes):
    """Untag an alternating ('v',x)/('f',y) cycle into an id tuple.

    Starts at a vertex (so even positions are vertices) and picks, among all
    vertex rotations and both directions, the lexicographically smallest.
    """
    if not tagged_nodes:
        return ()
    nodes = tuple(tagged_nodes)
    k = len(nodes)
    best = None
    for p in (i for i, (kind, _) in enumerate(nodes) if kind == "v"):
        fwd = tuple(nodes[(p + i) % k][1] for i in range(k))
        rev = tuple(nodes[(p - i) % k][1] for i in range(k))
        for cand in (fwd, rev):
            if best is None or cand < best:
                best = cand
    return best


def _med_of(g: DiGraph, below: frozenset) -> frozenset:
    above = frozenset(range(g.m)) - below
    touch_below = {v for i in below for v in g.arcs[i]}
    touch_above = {v for i in above for v in g.arcs[i]}
    return frozenset(touch_below & touch_above)


def _cyclic_equivalent(a, b) -> bool:
    """Same cyclic sequence up to rotation and reflection."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    k = len(a)
    rots = {tuple(a[(p + i) % k] for i in range(k)) for p in range(k)}
    rots |= {tuple(a[(p - i) % k] for i in range(k)) for p in range(k)}
    return b in rots


class _Dual:
    """Arc dual of an embedding: arcs adjacent through shared corners."""

    def __init__(self, plane: PlaneGraph):
        self.plane = plane
        self.corner_arcs = {}
        g = plane.graph
        for v in g.vertices:
            rot = plane.rotation(v)
            for k in range(len(rot)):
                self.corner_arcs[(v, k)] = (rot[k], rot[(k + 1) % len(rot)])

    def components(self, removed):
        """Arc components after cutting the given corners; sorted for determinism."""
        adj = {i: [] for i in range(self.plane.graph.m)}
        for corner, (a, b) in self.corner_arcs.items():
            if corner in removed or a == b:
                continue
            adj[a].append(b)
            adj[b].append(a)
        seen = {}
        comps = []
        for start in range(self.plane.graph.m):
            if start in seen:
                continue
            comp = {start}
            seen[start] = True
            stack = [start]
            while stack:
                a = stack.pop()
                for b in adj[a]:
                    if b not in comp:
                        comp.add(b)
                        seen[b] = True
                        stack.append(b)
            comps.append(frozenset(comp))
        return comps


def _resolve_and_separate(plane, dual, noose_nodes, below, cap=20000):
    """Try corner resolutions of a node-sequence noose; accept one that cuts
    the sphere into exactly the two sides of the split."""
    g = plane.graph
    k = len(noose_nodes)
    if k == 0 or k % 2 != 0:
        return False
    steps = []
    for j in range(k):
        a, b = noose_nodes[j], noose_nodes[(j + 1) % k]
        v, f = (a, b) if j % 2 == 0 else (b, a)
        choices = plane.vertex_face_corners(v, f)
        if not choices:
            return False
        steps.append(choices)
    total = 1
    for c in steps:
        total *= len(c)
        if total > cap:
            return False
    above = frozenset(range(g.m)) - below
    for combo in itertools.product(*steps):
        if len(set(combo)) != len(combo):
            continue
        comps = dual.components(frozenset(combo))
        if len(comps) != 2:
            continue
        if {comps[0], comps[1]} == {below, above}:
            return True
    return False


def validate_sc(g: DiGraph, emb: Embedding, scd: SphereCutDecomposition) -> ScReport:
    """Check every invariant of a sphere-cut decomposition.

    Returns the width on success, else the first violated invariant; never
    raises for content violations.
    """
    try:
        plane = validate_embedding(g, emb)
    except ValidationError as exc:
        return ScReport(False, error=f"embedding invalid: {exc}")
    nodes = set(scd.parent)
    roots = [x for x, p in scd.parent.items() if p is None]
    if len(roots) != 1 or roots[0] != scd.root:
        return ScReport(False, error="decomposition must have exactly one root")
    for x, p in scd.parent.items():
        if p is not None and p not in nodes:
            return ScReport(False, error=f"node {x} has unknown parent {p}")
    kids = scd.children()
    # acyclicity / reachability of the parent map
    seen = set()
    stack = [scd.root]
    while stack:
        x = stack.pop()
        if x in seen:
            return ScReport(False, error="parent map contains a cycle")
        seen.add(x)
        stack.extend(kids[x])
    if seen != nodes:
        return ScReport(False, error="tree is disconnected")
    if len(kids[scd.root]) != 1:
        return ScReport(False, error="root must have degree 1")
    if scd.root in scd.leaf_arc:
        return ScReport(False, error="root must not be a leaf")
    for x in nodes:
        if x == scd.root:
            continue
        deg = len(kids[x])
        if x in scd.leaf_arc:
            if deg != 0:
                return ScReport(False, error=f"leaf {x} has children")
        elif deg != 2:
            return ScReport(False, error=f"internal node {x} must have 2 children")
    mapped = sorted(scd.leaf_arc.values())
    if mapped != list(range(g.m)):
        return ScReport(False, error="leaves are not a bijection onto the arcs")
    below = scd.arcs_below()
    dual = _Dual(plane)
    width = 0
    for x in sorted(nodes):
        if x == scd.root:
            continue
        is_root_edge = scd.parent[x] == scd.root
        med = _med_of(g, below[x])
        stored = tuple(scd.boundary.get(x, ()))
        noose = tuple(scd.noose.get(x, ()))
        if is_root_edge:
            if stored or noose or med:
                return ScReport(False, error=f"root edge at {x} must be empty")
            continue
        if not med:
            return ScReport(False, error=f"edge above {x} has empty boundary")
        if frozenset(stored) != med:
            return ScReport(
                False, error=f"stored boundary at {x} differs from the split boundary")
        verts = noose[0::2]
        faces = noose[1::2]
        if len(noose) % 2 != 0 or not noose:
            return ScReport(False, error=f"noose at {x} must alternate vertex/face")
        if len(set(verts)) != len(verts) or len(set(faces)) != len(faces):
            return ScReport(False, error=f"noose at {x} repeats a vertex or face")
        if frozenset(verts) != med:
            return ScReport(False, error=f"noose at {x} does not pass through the boundary")
        if not _cyclic_equivalent(verts, stored):
            return ScReport(
                False, error=f"boundary order at {x} disagrees with the noose")
        if not all(v in g.vertices for v in verts) \
                or not all(0 <= f < plane.n_faces for f in faces):
            return ScReport(False, error=f"noose at {x} references unknown nodes")
        if not _resolve_and_separate(plane, dual, noose, below[x]):
            return ScReport(
                False, error=f"noose at {x} does not separate the split")
        width = max(width, len(stored))
    for x in sorted(nodes):
        if x in scd.leaf_arc or x == scd.root:
            continue
        c1, c2 = kids[x]
        if below[c1] | below[c2] != below[x] or below[c1] & below[c2]:
            return ScReport(False, error=f"children of {x} do not partition its arcs")
        medx = frozenset(scd.boundary.get(x, ()))
        if not medx <= frozenset(scd.boundary.get(c1, ())) | frozenset(scd.boundary.get(c2, ())):
            return ScReport(
                False, error=f"boundary of {x} is not covered by its children")
    return ScReport(True, width=width)


class _Builder:
    """Top-down splitter: shortest valid radial cycle, balance-window first."""

    def __init__(self, g: DiGraph, plane: PlaneGraph):
        self.g = g
        self.plane = plane
        self.dual = _Dual(plane)
        self.all_arcs = frozenset(range(g.m))
        self.counter = itertools.count(1)
        self.parent = {}
        self.leaf_arc = {}
        self.boundary = {}
        self.noose = {}
        # arcs incident to each radial node, for the allowed-node test
        self.node_arcs = {}
        for v in g.vertices:
            self.node_arcs[("v", v)] = frozenset(g.incident_arcs(v))
        for fid, walk in enumerate(plane.faces):
            self.node_arcs[("f", fid)] = frozenset(i for i, _ in walk)
        self.corner_ends = {}
        for corner in self.dual.corner_arcs:
            v, _ = corner
            self.corner_ends[corner] = (("v", v), ("f", plane.corner_face[corner]))

    def new_node(self, parent):
        x = next(self.counter)
        self.parent[x] = parent
        return x

    def quad_cycle(self, i):
        """Corner cycle and node cycle of the quadrilateral around arc i."""
        u, v = self.g.arcs[i]
        pu = self.plane.rotation(u).index(i)
        pv = self.plane.rotation(v).index(i)
        du = len(self.plane.rotation(u))
        dv = len(self.plane.rotation(v))
        corners = ((u, (pu - 1) % du), (v, pv), (v, (pv - 1) % dv), (u, pu))
        f_left = self.plane.face_of[(i, u)]
        f_right = self.plane.face_of[(i, v)]
        ns = (("v", u), ("f", f_left), ("v", v), ("f", f_right))
        return corners, ns

    def region_boundary(self, arcs):
        return frozenset(c for c, (a, b) in self.dual.corner_arcs.items()
                         if (a in arcs) != (b in arcs))

    def extract_cycle(self, corners):
        """A single simple cycle from a corner set, or None.

        Returns (corner cycle, node cycle) aligned so nodes[j] joins
        corners[j-1] and corners[j].
        """
        if not corners:
            return None
        incidence = {}
        for c in corners:
            for node in self.corner_ends[c]:
                incidence.setdefault(node, []).append(c)
        if any(len(cs) != 2 for cs in incidence.values()):
            return None
        start = min(incidence)
        first = min(incidence[start])
        cycle = [first]
        nodes = [start]
        current = self.other_end(first, start)
        while current != start:
            c1, c2 = incidence[current]
            nxt = c2 if c1 == cycle[-1] else c1
            nodes.append(current)
            cycle.append(nxt)
            current = self.other_end(nxt, current)
        if len(cycle) != len(corners):
            return None
        vs = [x for k, x in nodes if k == "v"]
        fs = [x for k, x in nodes if k == "f"]
        if len(set(vs)) != len(vs) or len(set(fs)) != len(fs):
            return None
        return tuple(cycle), tuple(nodes)

    def other_end(self, corner, node):
        a, b = self.corner_ends[corner]
        return b if node == a else a

    def candidate_cycles(self, region, boundary_nodes):
        """Deduped candidate splitting cycles inside the region."""
        allowed = set(boundary_nodes)
        for node, arcs in self.node_arcs.items():
            if arcs and arcs <= region:
                allowed.add(node)
        allowed_corners = sorted(
            c for c, (a, b) in self.dual.corner_arcs.items()
            if (a in region or b in region)
            and all(e in allowed for e in self.corner_ends[c]))
        out = {}
        for i in sorted(region):
            corners, ns = self.quad_cycle(i)
            if len(set(corners)) == len(corners):
                out.setdefault(frozenset(corners), (corners, ns))
        adj = {}
        for c in allowed_corners:
            a, b = self.corner_ends[c]
            adj.setdefault(a, []).append((c, b))
            adj.setdefault(b, []).append((c, a))
        for closing in allowed_corners:
            na, nb = self.corner_ends[closing]
            # BFS shortest na -> nb path avoiding the closing corner
            prev = {na: None}
            queue = [na]
            qi = 0
            while qi < len(queue) and nb not in prev:
                node = queue[qi]
                qi += 1
                for c, other in sorted(adj.get(node, ())):
                    if c == closing or other in prev:
                        continue
                    prev[other] = (c, node)
                    queue.append(other)
            if nb not in prev:
                continue
            corners = [closing]
            nodes = [nb]
            node = nb
            while prev[node] is not None:
                c, node = prev[node]
                corners.append(c)
                nodes.append(node)
            corners.reverse()
            nodes.reverse()
            # nodes[j] sits between corners[j-1] and corners[j]
            key = frozenset(corners)
            if len(key) == len(corners):
                out.setdefault(key, (tuple(corners), tuple(nodes)))
        return [out[k] for k in sorted(out, key=sorted)]

    def evaluate(self, corners, nodes, region):
        """Children of a candidate split, or None if the cut is not valid."""
        comps = self.dual.components(frozenset(corners))
        if len(comps) != 2:
            return None
        inside = [c for c in comps if c <= region]
        if region == self.all_arcs:
            a1 = min(inside, key=min)
        else:
            if len(inside) != 1:
                return None
            a1 = inside[0]
        a2 = region - a1
        if not a1 or not a2:
            return None
        if self.region_boundary(a1) != frozenset(corners):
            return None
        child2 = self.extract_cycle(self.region_boundary(a2))
        if child2 is None:
            return None
        for arcs, cyc_nodes in ((a1, nodes), (a2, child2[1])):
            med = _med_of(self.g, arcs)
            verts = {x for k, x in cyc_nodes if k == "v"}
            if med != verts:
                return None
        return (a1, (corners, nodes)), (a2, child2)

    def split(self, region, cycle):
        """Build the subtree for a region arriving through the given noose."""
        node = self.new_node(None)  # parent fixed by caller
        if cycle is None:
            self.boundary[node] = ()
            self.noose[node] = ()
        else:
            ns = _canonical_noose(cycle[1])
            self.noose[node] = ns
            self.boundary[node] = ns[0::2]
        if len(region) == 1:
            (arc,) = region
            self.leaf_arc[node] = arc
            return node
        boundary_nodes = set() if cycle is None else set(cycle[1])
        best = None
        for corners, ns in self.candidate_cycles(region, boundary_nodes):
            got = self.evaluate(corners, ns, region)
            if got is None:
                continue
            (a1, c1), (a2, c2) = got
            share = max(len(a1), len(a2))
            in_window = 4 * len(a1) >= len(region) and 4 * len(a2) >= len(region)
            score = ((0, len(corners), share) if in_window
                     else (1, share, len(corners)))
            key = (score, _canonical_noose(ns))
            if best is None or key < best[0]:
                best = (key, got)
        if best is None:
            raise ValidationError("no valid splitting noose found; cannot decompose")
        (a1, c1), (a2, c2) = best[1]
        for arcs, cyc in ((a1, c1), (a2, c2)):
            child = self.split(arcs, cyc)
            self.parent[child] = node
        return node


def build_sc_heuristic(g: DiGraph, emb: Embedding) -> SphereCutDecomposition:
    """A valid sphere-cut decomposition of a connected bridgeless plane graph.

    Splits top-down by the best valid radial cycle: prefer splits leaving
    each side between a quarter and three quarters of the arcs, then shorter
    nooses; validity (not width) is the guarantee.
    """
    if g.m == 0:
        raise ValidationError("graph has no arcs")
    if bridge_arcs(g):
        raise ValidationError("graph has a bridge")
    pieces = bridges_and_components(g)
    if len(pieces) != 1:
        raise ValidationError("graph is disconnected")
    plane = validate_embedding(g, emb)
    builder = _Builder(g, plane)
    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * g.m + 100))
    try:
        top = builder.split(builder.all_arcs, None)
    finally:
        sys.setrecursionlimit(limit)
    root = builder.new_node(None)
    builder.parent[top] = root
    builder.boundary[root] = ()
    builder.noose[root] = ()
    return SphereCutDecomposition(builder.parent, builder.leaf_arc,
                                  builder.boundary, builder.noose, root)


def grid_underlying(rows: int, cols: int):
    """The rows x cols grid with its canonical arc order and rotations.

    Vertex (i, j) has id (i-1)*cols + j; arcs are emitted per vertex in
    row-major order, right edge before down edge, oriented low-to-high id;
    rotations are clockwise up, right, down, left.
    """
    if rows < 2 or cols < 2:
        raise ValueError("grid dimensions must be at least 2x2")
    vid = lambda i, j: (i - 1) * cols + j
    arcs = []
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            if j < cols:
                arcs.append((vid(i, j), vid(i, j + 1)))
            if i < rows:
                arcs.append((vid(i, j), vid(i + 1, j)))
    g = DiGraph(rows * cols, arcs)
    index = {frozenset(a): k for k, a in enumerate(arcs)}
    rotations = {}
    for i in range(1, rows + 1):
        for j in range(1, cols + 1):
            slots = []
            for ni, nj in ((i - 1, j), (i, j + 1), (i + 1, j), (i, j - 1)):
                if 1 <= ni <= rows and 1 <= nj <= cols:
                    slots.append(index[frozenset({vid(i, j), vid(ni, nj)})])
            rotations[vid(i, j)] = tuple(slots)
    return g, Embedding(rotations)


def _grid_sweep_arc_order(rows, cols):
    """Column-major staircase sweep along the longer dimension.

    Prefixes of the order have boundaries of at most min(rows, cols) + 1
    vertices, each a single axis-aligned staircase cut.
    """
    vid = lambda i, j: (i - 1) * cols + j
    sweep = []
    if cols >= rows:
        order = [(i, j) for j in range(1, cols + 1) for i in range(1, rows + 1)]
    else:
        order = [(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)]
    for i, j in order:
        if cols >= rows:
            preds = ((i, j - 1), (i - 1, j))  # left edge, then up edge
        else:
            preds = ((i - 1, j), (i, j - 1))
        for pi, pj in preds:
            if pi >= 1 and pj >= 1:
                sweep.append(frozenset({vid(i, j), vid(pi, pj)}))
    return sweep


def grid_sc_decomposition(rows: int, cols: int) -> SphereCutDecomposition:
    """Analytic sphere-cut decomposition of the grid, width <= min(rows,cols)+1.

    A caterpillar over the staircase sweep order: the k-th spine edge splits
    off the first k arcs, whose boundary is one gridline staircase.
    """
    g, emb = grid_underlying(rows, cols)
    plane = validate_embedding(g, emb)
    builder = _Builder(g, plane)
    index = {frozenset(a): k for k, a in enumerate(g.arcs)}
    order = [index[e] for e in _grid_sweep_arc_order(rows, cols)]
    assert sorted(order) == list(range(g.m))

    def noose_for(suffix):
        cyc = builder.extract_cycle(builder.region_boundary(frozenset(suffix)))
        assert cyc is not None, "staircase region boundary is not a single cycle"
        return cyc

    def leaf(arc, parent):
        x = builder.new_node(parent)
        builder.leaf_arc[x] = arc
        cyc = noose_for([arc])
        ns = _canonical_noose(cyc[1])
        builder.noose[x] = ns
        builder.boundary[x] = ns[0::2]
        return x

    root = builder.new_node(None)
    builder.boundary[root] = ()
    builder.noose[root] = ()
    spine = builder.new_node(root)
    builder.boundary[spine] = ()
    builder.noose[spine] = ()
    for k in range(len(order) - 1):
        leaf(order[k], spine)
        if k == len(order) - 2:
            leaf(order[k + 1], spine)
        else:
            nxt = builder.new_node(spine)
            suffix = order[k + 1:]
            cyc = noose_for(suffix)
            ns = _canonical_noose(cyc[1])
            builder.noose[nxt] = ns
            builder.boundary[nxt] = ns[0::2]
            spine = nxt
    return SphereCutDecomposition(builder.parent, builder.leaf_arc,
                                  builder.boundary, builder.noose, root)


def preprocess_planar(g: DiGraph, emb: Embedding):
    """Bridge removal and component split, embeddings restricted per piece.

    Pieces without arcs contribute optimum 0 and are dropped.
    """
    out = []
    for piece, arc_map in bridges_and_components(g):
        if piece.m == 0:
            continue
        out.append((piece, emb.restricted(piece.vertices, arc_map), arc_map))
    return out


def write_sc(scd: SphereCutDecomposition, width: int | None = None) -> str:
    if width is None:
        width = scd.width
    m = len(scd.leaf_arc)
    out = [f"s sc {len(scd.parent)} {width} {m}"]
    for x in sorted(scd.parent):
        p = scd.parent[x]
        out.append(f"t {x} {p if p is not None else 0}")
    for x in sorted(scd.leaf_arc):
        out.append(f"l {x} {scd.leaf_arc[x]}")
    for x in sorted(scd.parent):
        if scd.parent[x] is None or not scd.boundary.get(x):
            continue
        out.append(" ".join(["d", str(x)] + [str(v) for v in scd.boundary[x]]))
    for x in sorted(scd.parent):
        if scd.parent[x] is None or not scd.noose.get(x):
            continue
        tokens = []
        for pos, ident in enumerate(scd.noose[x]):
            tokens.append(str(ident if pos % 2 == 0 else ident + 1))
        out.append(" ".join(["c", str(x)] + tokens))
    return "\n".join(out) + "\n"


def parse_sc(text: str, g: DiGraph) -> SphereCutDecomposition:
    header = None
    parent = {}
    leaf_arc = {}
    boundary = {}
    noose = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("%"):
            continue
        fields = ln.split()
        try:
            if fields[0] == "s":
                if len(fields) != 5 or fields[1] != "sc":
                    raise ParseError("header must be 's sc <#nodes> <width> <m>'", lineno)
                header = tuple(int(f) for f in fields[2:])
            elif fields[0] == "t":
                x, p = int(fields[1]), int(fields[2])
                parent[x] = None if p == 0 else p
            elif fields[0] == "l":
                leaf_arc[int(fields[1])] = int(fields[2])
            elif fields[0] == "d":
                boundary[int(fields[1])] = tuple(int(f) for f in fields[2:])
            elif fields[0] == "c":
                ids = [int(f) for f in fields[2:]]
                noose[int(fields[1])] = tuple(
                    ident if pos % 2 == 0 else ident - 1
                    for pos, ident in enumerate(ids))
            else:
                raise ParseError(f"unknown line kind {fields[0]!r}", lineno)
        except (ValueError, IndexError):
            raise ParseError(f"malformed line {ln!r}", lineno) from None
    if header is None:
        raise ParseError("missing 's sc' header")
    if len(parent) != header[0]:
        raise ParseError(f"header claims {header[0]} nodes, found {len(parent)}")
    if header[2] != g.m:
        raise ParseError(f"header claims {header[2]} arcs, graph has {g.m}")
    roots = [x for x, p in parent.items() if p is None]
    if len(roots) != 1:
        raise ParseError("file must define exactly one root")
    for x in parent:
        boundary.setdefault(x, ())
        noose.setdefault(x, ())
    return SphereCutDecomposition(parent, leaf_arc, boundary, noose, roots[0])
