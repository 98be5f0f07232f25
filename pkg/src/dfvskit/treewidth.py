"""Tree decompositions and the dynamic programs over them.

A tree decomposition assigns a bag of vertices to every node of a tree so
that every vertex and every arc is covered and each vertex's occurrences form
a subtree.  The nice form normalizes nodes into leaf / introduce / forget /
join kinds with empty root and leaf bags; the DFVS dynamic program stores,
for every node, every bag subset X and every ordering sigma of the remaining
bag vertices, the fewest deletions below the bag compatible with (X, sigma).
The DFAS variant indexes by sigma alone and deletes arcs.

Note on the introduce rule: the source material defines the neighbor filters
over X, which would make the ordering check vacuous; the evidently intended
reading, implemented here, filters the in/out-neighbors of the introduced
vertex that lie in the bag minus X and requires sigma to place them on the
correct side.  Both readings are recorded here deliberately.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .digraph import DiGraph, delete, is_acyclic
from .errors import ParseError, ValidationError
from .oracle import OracleResult

INF = math.inf


@dataclass
class TreeDecomposition:
    bags: dict          # node id -> frozenset of vertices
    edges: tuple        # undirected tree edges (i, j)
    root: int | None = None

    def __post_init__(self):
        self.bags = {int(i): frozenset(b) for i, b in self.bags.items()}
        self.edges = tuple((int(i), int(j)) for i, j in self.edges)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1


def validate_td(td: TreeDecomposition, g: DiGraph) -> None:
    """Check the three decomposition axioms; raise naming the offender."""
    nodes = set(td.bags)
    if not nodes:
        raise ValidationError("decomposition has no nodes")
    for i, j in td.edges:
        if i not in nodes or j not in nodes:
            raise ValidationError(f"tree edge ({i},{j}) references a missing node")
    if len(td.edges) != len(nodes) - 1:
        raise ValidationError("tree edge count must be #nodes - 1")
    adj = {i: [] for i in nodes}
    for i, j in td.edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = set()
    stack = [next(iter(sorted(nodes)))]
    while stack:
        x = stack.pop()
        if x in seen:
            continue
        seen.add(x)
        stack.extend(adj[x])
    if seen != nodes:
        raise ValidationError("decomposition tree is disconnected")
    covered = set().union(*td.bags.values()) if td.bags else set()
    for v in sorted(g.vertices):
        if v not in covered:
            raise ValidationError(f"vertex {v} appears in no bag")
    for u, v in g.arcs:
        if not any(u in b and v in b for b in td.bags.values()):
            raise ValidationError(f"no bag contains both endpoints of arc ({u},{v})")
    for v in sorted(g.vertices):
        holders = {i for i, b in td.bags.items() if v in b}
        comp = set()
        stack = [min(holders)]
        while stack:
            x = stack.pop()
            if x in comp or x not in holders:
                continue
            comp.add(x)
            stack.extend(adj[x])
        if comp != holders:
            raise ValidationError(f"occurrences of vertex {v} are not connected")


def parse_td(text: str, g: DiGraph) -> TreeDecomposition:
    """Parse the .td format and validate all axioms against g."""
    header = None
    bags = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("%"):
            continue
        fields = ln.split()
        if fields[0] == "s":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(fields) != 5 or fields[1] != "td":
                raise ParseError("header must be 's td <#bags> <maxbagsize> <n>'", lineno)
            header = tuple(int(f) for f in fields[2:])
        elif fields[0] == "b":
            if len(fields) < 2:
                raise ParseError("bag line must be 'b <id> <v...>'", lineno)
            bid = int(fields[1])
            if bid in bags:
                raise ParseError(f"duplicate bag id {bid}", lineno)
            bags[bid] = frozenset(int(f) for f in fields[2:])
        else:
            if len(fields) != 2:
                raise ParseError(f"expected tree edge 'i j', got {ln!r}", lineno)
            edges.append((int(fields[0]), int(fields[1])))
    if header is None:
        raise ParseError("missing 's td' header")
    nbags, maxbag, n = header
    if len(bags) != nbags:
        raise ParseError(f"header claims {nbags} bags, found {len(bags)}")
    if bags and max(len(b) for b in bags.values()) != maxbag:
        raise ParseError(f"header claims max bag size {maxbag}")
    if n != g.n:
        raise ParseError(f"header claims n={n}, graph has {g.n} vertices")
    td = TreeDecomposition(bags, edges)
    validate_td(td, g)
    return td


def write_td(td: TreeDecomposition, n: int) -> str:
    maxbag = max((len(b) for b in td.bags.values()), default=0)
    out = [f"s td {len(td.bags)} {maxbag} {n}"]
    for i in sorted(td.bags):
        out.append(" ".join(["b", str(i)] + [str(v) for v in sorted(td.bags[i])]))
    for i, j in sorted(td.edges):
        out.append(f"{i} {j}")
    return "\n".join(out) + "\n"


def _underlying_adjacency(g: DiGraph):
    return {v: set(g.neighbors(v)) for v in g.vertices}


def _decomposition_from_order(g: DiGraph, order) -> TreeDecomposition:
    """Standard elimination-order construction of a tree decomposition."""
    if not order:
        return TreeDecomposition({1: frozenset()}, ())
    adj = _underlying_adjacency(g)
    remaining = set(order)
    step = {v: i for i, v in enumerate(order)}
    bags = {}
    edges = []
    for i, v in enumerate(order, start=1):
        remaining.discard(v)
        nbrs = adj[v] & remaining
        bags[i] = frozenset({v} | nbrs)
        for a, b in itertools.combinations(sorted(nbrs), 2):
            adj[a].add(b)
            adj[b].add(a)
        if nbrs:
            edges.append((i, step[min(nbrs, key=lambda w: step[w])] + 1))
        elif i < len(order):
            edges.append((i, i + 1))
    return TreeDecomposition(bags, edges)


def td_exact_small(g: DiGraph, cap: int = 12) -> TreeDecomposition:
    """Width-optimal decomposition via dynamic programming over vertex subsets.

    For each subset S the table holds the best possible maximum elimination
    degree over orderings that eliminate S first; the degree of v after S is
    the number of outside vertices adjacent to v directly or through S.
    """
    from .errors import CapExceeded

    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} > {cap} vertices")
    verts = sorted(g.vertices)
    if not verts:
        return TreeDecomposition({1: frozenset()}, ())
    index = {v: i for i, v in enumerate(verts)}
    nbr_mask = [0] * len(verts)
    for u, v in g.arcs:
        nbr_mask[index[u]] |= 1 << index[v]
        nbr_mask[index[v]] |= 1 << index[u]
    n = len(verts)
    full = (1 << n) - 1

    def elim_degree(s_mask, vi):
        # vertices outside s|{v} adjacent to v or connected to v through s
        seen = 1 << vi
        frontier = nbr_mask[vi]
        outside = 0
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            if seen & bit:
                continue
            seen |= bit
            if s_mask & bit:
                frontier |= nbr_mask[bit.bit_length() - 1] & ~seen
            else:
                outside |= bit
        return bin(outside).count("1")

    best = {0: -1}
    choice = {}
    order_by_bits = sorted(range(1, full + 1), key=lambda m: (bin(m).count("1"), m))
    for mask in order_by_bits:
        val = None
        pick = None
        rest = mask
        while rest:
            bit = rest & -rest
            rest ^= bit
            vi = bit.bit_length() - 1
            cand = max(best[mask ^ bit], elim_degree(mask ^ bit, vi))
            if val is None or cand < val:
                val, pick = cand, vi
        best[mask] = val
        choice[mask] = pick
    order_rev = []
    mask = full
    while mask:
        vi = choice[mask]
        order_rev.append(verts[vi])
        mask ^= 1 << vi
    return _decomposition_from_order(g, order_rev[::-1])


def td_heuristic(g: DiGraph) -> TreeDecomposition:
    """Valid decomposition via min-fill elimination (no width guarantee)."""
    adj = _underlying_adjacency(g)
    remaining = set(g.vertices)
    order = []
    while remaining:
        best_v, best_fill = None, None
        for v in sorted(remaining):
            nbrs = sorted(adj[v] & remaining)
            fill = sum(1 for a, b in itertools.combinations(nbrs, 2)
                       if b not in adj[a])
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        nbrs = adj[best_v] & remaining
        for a, b in itertools.combinations(sorted(nbrs), 2):
            adj[a].add(b)
            adj[b].add(a)
        remaining.discard(best_v)
        order.append(best_v)
    return _decomposition_from_order(g, order)


@dataclass
class NiceTreeDecomposition:
    kinds: dict      # node -> "leaf" | "introduce" | "forget" | "join"
    bags: dict       # node -> frozenset
    children: dict   # node -> tuple of node ids
    vertex: dict     # node -> introduced/forgotten vertex (or None)
    root: int

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0) - 1

    def as_tree_decomposition(self) -> TreeDecomposition:
        edges = [(c, x) for x, cs in self.children.items() for c in cs]
        return TreeDecomposition(dict(self.bags), edges, root=self.root)

    def postorder(self):
        out = []
        stack = [(self.root, False)]
        while stack:
            node, done = stack.pop()
            if done:
                out.append(node)
            else:
                stack.append((node, True))
                for c in reversed(self.children[node]):
                    stack.append((c, False))
        return out


def validate_nice(ntd: NiceTreeDecomposition, g: DiGraph) -> None:
    validate_td(ntd.as_tree_decomposition(), g)
    if ntd.bags[ntd.root]:
        raise ValidationError("root bag must be empty")
    for x, kind in ntd.kinds.items():
        bag = ntd.bags[x]
        kids = ntd.children[x]
        if kind == "leaf":
            if kids or bag:
                raise ValidationError(f"leaf node {x} must be empty and childless")
        elif kind == "introduce":
            (y,) = kids
            v = ntd.vertex[x]
            if v in ntd.bags[y] or bag != ntd.bags[y] | {v}:
                raise ValidationError(f"introduce node {x} malformed")
        elif kind == "forget":
            (y,) = kids
            v = ntd.vertex[x]
            if v not in ntd.bags[y] or bag != ntd.bags[y] - {v}:
                raise ValidationError(f"forget node {x} malformed")
        elif kind == "join":
            y, z = kids
            if ntd.bags[y] != bag or ntd.bags[z] != bag:
                raise ValidationError(f"join node {x} children bags differ")
        else:
            raise ValidationError(f"unknown node kind {kind!r}")


def make_nice(td: TreeDecomposition, root: int | None = None) -> NiceTreeDecomposition:
    """Normalize a tree decomposition; the width is unchanged."""
    if root is None:
        root = td.root if td.root is not None else min(td.bags)
    adj = {i: set() for i in td.bags}
    for i, j in td.edges:
        adj[i].add(j)
        adj[j].add(i)
    kinds, bags, children, vertex = {}, {}, {}, {}
    counter = itertools.count(1)

    def new_node(kind, bag, kids=(), v=None):
        x = next(counter)
        kinds[x], bags[x], children[x], vertex[x] = kind, frozenset(bag), tuple(kids), v
        return x

    def chain_to(top, have, want):
        for v in sorted(have - want, reverse=True):
            have = have - {v}
            top = new_node("forget", have, (top,), v)
        for v in sorted(want - have):
            have = have | {v}
            top = new_node("introduce", have, (top,), v)
        return top

    def build(node, parent):
        bag = td.bags[node]
        kids = sorted(w for w in adj[node] if w != parent)
        if not kids:
            top = new_node("leaf", frozenset())
            return chain_to(top, frozenset(), bag)
        tops = [chain_to(build(w, node), td.bags[w], bag) for w in kids]
        while len(tops) > 1:
            merged = new_node("join", bag, (tops[0], tops[1]))
            tops = [merged] + tops[2:]
        return tops[0]

    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(td.bags) + 100))
    try:
        top = build(root, None)
    finally:
        sys.setrecursionlimit(limit)
    top = chain_to(top, td.bags[root], frozenset())
    return NiceTreeDecomposition(kinds, bags, children, vertex, top)


def _subsets_sorted(s):
    elems = sorted(s)
    out = []
    for k in range(len(elems) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(elems, k))
    return out


def dp_transition_dfvs(g, kind, bag, v, child_bags, child_tables):
    """One table of the DFVS recurrence, computed densely from the children."""
    table = {}
    if kind == "leaf":
        table[(frozenset(), ())] = 0
        return table
    if kind == "join":
        ty, tz = child_tables
        for key, val in ty.items():
            table[key] = val + tz[key]
        return table
    (ty,) = child_tables
    for x_set in _subsets_sorted(bag):
        for sigma in itertools.permutations(sorted(bag - x_set)):
            if kind == "introduce":
                if v in x_set:
                    val = ty[(x_set - {v}, sigma)]
                else:
                    pos = {w: i for i, w in enumerate(sigma)}
                    pv = pos[v]
                    ok = all(pos[w] > pv for w in g.out_neighbors(v) if w in pos) \
                        and all(pos[w] < pv for w in g.in_neighbors(v) if w in pos)
                    val = ty[(x_set, tuple(w for w in sigma if w != v))] if ok else INF
            else:  # forget
                val = ty[(x_set | {v}, sigma)] + 1
                for p in range(len(sigma) + 1):
                    val = min(val, ty[(x_set, sigma[:p] + (v,) + sigma[p:])])
            table[(x_set, sigma)] = val
    return table


def _dfvs_tables(g, ntd):
    tables = {}
    for node in ntd.postorder():
        kids = ntd.children[node]
        tables[node] = dp_transition_dfvs(
            g, ntd.kinds[node], ntd.bags[node], ntd.vertex[node],
            [ntd.bags[c] for c in kids], [tables[c] for c in kids])
    return tables


def solve_dfvs_tw(g: DiGraph, ntd: NiceTreeDecomposition) -> OracleResult:
    """Minimum directed feedback vertex set via the nice-decomposition DP."""
    validate_nice(ntd, g)
    tables = _dfvs_tables(g, ntd)
    optimum = tables[ntd.root][(frozenset(), ())]
    witness = set()
    stack = [(ntd.root, frozenset(), ())]
    while stack:
        node, x_set, sigma = stack.pop()
        kind = ntd.kinds[node]
        if kind == "leaf":
            continue
        kids = ntd.children[node]
        target = tables[node][(x_set, sigma)]
        if kind == "join":
            stack.append((kids[0], x_set, sigma))
            stack.append((kids[1], x_set, sigma))
        elif kind == "introduce":
            v = ntd.vertex[node]
            if v in x_set:
                stack.append((kids[0], x_set - {v}, sigma))
            else:
                stack.append((kids[0], x_set, tuple(w for w in sigma if w != v)))
        else:  # forget
            v = ntd.vertex[node]
            ty = tables[kids[0]]
            if ty[(x_set | {v}, sigma)] + 1 == target:
                witness.add(v)
                stack.append((kids[0], x_set | {v}, sigma))
            else:
                for p in range(len(sigma) + 1):
                    sig2 = sigma[:p] + (v,) + sigma[p:]
                    if ty[(x_set, sig2)] == target:
                        stack.append((kids[0], x_set, sig2))
                        break
                else:
                    raise AssertionError("forget trace found no producing entry")
    if len(witness) != optimum or not is_acyclic(delete(g, frozenset(witness))):
        raise AssertionError("reconstructed DFVS witness failed validation")
    return OracleResult(int(optimum), frozenset(witness))


def _sigma_conflicts(g, pairs_positions):
    """Arc indices between positioned vertices that contradict the ordering."""
    pos = pairs_positions
    bad = []
    for u, pu in pos.items():
        for w, pw in pos.items():
            if pu > pw:
                i = g.arc_index(u, w)
                if i is not None:
                    bad.append(i)
    return bad


def dp_transition_dfas(g, kind, bag, v, child_tables):
    table = {}
    if kind == "leaf":
        table[()] = 0
        return table
    if kind == "join":
        ty, tz = child_tables
        for sigma, val in ty.items():
            other = tz[sigma]
            if val is INF or other is INF:
                table[sigma] = INF
                continue
            pos = {w: i for i, w in enumerate(sigma)}
            overlap = len(_sigma_conflicts(g, pos))
            table[sigma] = val + other - overlap
        return table
    (ty,) = child_tables
    for sigma in itertools.permutations(sorted(bag)):
        if kind == "introduce":
            pos = {w: i for i, w in enumerate(sigma)}
            pv = pos[v]
            cost = 0
            for w in sigma:
                if w == v:
                    continue
                if g.has_arc(v, w) and pos[w] < pv:
                    cost += 1
                if g.has_arc(w, v) and pos[w] > pv:
                    cost += 1
            val = ty[tuple(w for w in sigma if w != v)] + cost
        else:  # forget
            val = INF
            for p in range(len(sigma) + 1):
                val = min(val, ty[sigma[:p] + (v,) + sigma[p:]])
        table[sigma] = val
    return table


def _dfas_tables(g, ntd):
    tables = {}
    for node in ntd.postorder():
        kids = ntd.children[node]
        tables[node] = dp_transition_dfas(
            g, ntd.kinds[node], ntd.bags[node], ntd.vertex[node],
            [tables[c] for c in kids])
    return tables


def solve_dfas_tw(g: DiGraph, ntd: NiceTreeDecomposition) -> OracleResult:
    """Minimum directed feedback arc set; witness holds arc indices.

    Bag-internal deletions counted by both children of a join are subtracted
    once, since those arcs live in both child subgraphs.
    """
    validate_nice(ntd, g)
    tables = _dfas_tables(g, ntd)
    optimum = tables[ntd.root][()]
    witness = set()
    stack = [(ntd.root, ())]
    while stack:
        node, sigma = stack.pop()
        kind = ntd.kinds[node]
        if kind == "leaf":
            continue
        kids = ntd.children[node]
        target = tables[node][sigma]
        if kind == "join":
            stack.append((kids[0], sigma))
            stack.append((kids[1], sigma))
        elif kind == "introduce":
            v = ntd.vertex[node]
            pos = {w: i for i, w in enumerate(sigma)}
            pv = pos[v]
            for w in sigma:
                if w == v:
                    continue
                if g.has_arc(v, w) and pos[w] < pv:
                    witness.add(g.arc_index(v, w))
                if g.has_arc(w, v) and pos[w] > pv:
                    witness.add(g.arc_index(w, v))
            stack.append((kids[0], tuple(w for w in sigma if w != v)))
        else:  # forget
            v = ntd.vertex[node]
            ty = tables[kids[0]]
            for p in range(len(sigma) + 1):
                sig2 = sigma[:p] + (v,) + sigma[p:]
                if ty[sig2] == target:
                    stack.append((kids[0], sig2))
                    break
            else:
                raise AssertionError("forget trace found no producing entry")
    if len(witness) != optimum or not is_acyclic(delete(g, frozenset(), frozenset(witness))):
        raise AssertionError("reconstructed DFAS witness failed validation")
    return OracleResult(int(optimum), frozenset(witness))
