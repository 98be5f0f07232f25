"""Brute-force ground truth for every other module.

The searches here are deliberately dumb: cardinality-increasing subset
enumeration with an acyclicity check, nothing cleverer.  Trustworthiness
beats speed; the fast algorithms are validated against these.

For the hardness-chain instances (up to ~24 vertices / ~50 arcs) the plain
subset scan is too slow to *refute* a budget, so `dfvs_within_budget` and
`dfas_within_budget` provide an exhaustive branch-over-a-cycle decision
procedure: every deletion set must hit every directed cycle, so branching on
the members of one concrete cycle is exhaustive.  Both are property-tested
against the subset search on small random graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .digraph import DiGraph
from .errors import CapExceeded
from .formulas import HittingSetInstance, PermFormula


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: frozenset  # vertex ids for DFVS, arc indices for DFAS


def _acyclic_after(verts, arcs, removed_v=frozenset(), removed_a=frozenset()) -> bool:
    """Kahn's check on the remainder, without building graph values."""
    indeg = {v: 0 for v in verts if v not in removed_v}
    out = {v: [] for v in indeg}
    for idx, (u, v) in enumerate(arcs):
        if idx in removed_a or u not in indeg or v not in indeg:
            continue
        out[u].append(v)
        indeg[v] += 1
    queue = [v for v, d in indeg.items() if d == 0]
    done = 0
    while queue:
        v = queue.pop()
        done += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return done == len(indeg)


def min_dfvs_bruteforce(g: DiGraph, cap: int = 24) -> OracleResult:
    """Exact minimum directed feedback vertex set by subset enumeration.

    The witness is the lexicographically smallest optimal set (subsets of
    each cardinality are scanned in sorted order).
    """
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} > {cap} vertices")
    verts = sorted(g.vertices)
    arcs = g.arcs
    for k in range(g.n + 1):
        for combo in itertools.combinations(verts, k):
            if _acyclic_after(verts, arcs, frozenset(combo)):
                return OracleResult(k, frozenset(combo))
    raise AssertionError("unreachable: deleting all vertices is acyclic")


def min_dfas_bruteforce(g: DiGraph, cap: int = 24) -> OracleResult:
    """Exact minimum directed feedback arc set; witness holds arc indices."""
    if g.n > cap:
        raise CapExceeded(f"graph has {g.n} > {cap} vertices")
    verts = sorted(g.vertices)
    arcs = g.arcs
    for k in range(g.m + 1):
        for combo in itertools.combinations(range(g.m), k):
            if _acyclic_after(verts, arcs, frozenset(), frozenset(combo)):
                return OracleResult(k, frozenset(combo))
    raise AssertionError("unreachable: deleting all arcs is acyclic")


def _shortest_cycle_in(verts, out):
    """Shortest directed cycle in an adjacency map, as an ordered vertex list."""
    best = None
    for s in verts:
        limit = len(best) if best is not None else len(verts) + 1
        if limit == 2:
            break
        dist = {s: 0}
        parent = {}
        queue = [s]
        qi = 0
        closing = None
        while qi < len(queue) and closing is None:
            v = queue[qi]
            qi += 1
            if dist[v] + 1 >= limit:
                break
            for w in out[v]:
                if w == s:
                    closing = v
                    break
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
        if closing is not None:
            cyc = [closing]
            while cyc[-1] != s:
                cyc.append(parent[cyc[-1]])
            cyc.reverse()
            if best is None or len(cyc) < len(best):
                best = cyc
    return best


def shortest_cycle(g: DiGraph):
    """Vertices of a shortest directed cycle in traversal order, or None.

    Deterministic: among equally short cycles, the one whose BFS start vertex
    is smallest.
    """
    verts = sorted(g.vertices)
    return _shortest_cycle_in(verts, {v: g.out_neighbors(v) for v in verts})


def dfvs_within_budget(g: DiGraph, budget: int) -> bool:
    """Decide min-DFVS(g) <= budget, exhaustively.

    Branches on the vertices of a shortest cycle (every feedback set must hit
    every cycle, so this is complete); identical deletion sets reached along
    different branch orders are explored once.
    """
    verts = sorted(g.vertices)
    arcs = g.arcs
    seen = set()

    def rec(removed):
        alive = [v for v in verts if v not in removed]
        out = {v: [] for v in alive}
        for u, v in arcs:
            if u not in removed and v not in removed:
                out[u].append(v)
        cyc = _shortest_cycle_in(alive, out)
        if cyc is None:
            return True
        if len(removed) >= budget:
            return False
        for v in sorted(cyc):
            nxt = removed | {v}
            if nxt in seen:
                continue
            seen.add(nxt)
            if rec(nxt):
                return True
        return False

    return rec(frozenset())


def dfas_within_budget(g: DiGraph, budget: int) -> bool:
    """Decide min-DFAS(g) <= budget, exhaustively (see dfvs_within_budget)."""
    verts = sorted(g.vertices)
    arcs = g.arcs
    index = {a: i for i, a in enumerate(arcs)}
    seen = set()

    def rec(removed):
        out = {v: [] for v in verts}
        for i, (u, v) in enumerate(arcs):
            if i not in removed:
                out[u].append(v)
        cyc = _shortest_cycle_in(verts, out)
        if cyc is None:
            return True
        if len(removed) >= budget:
            return False
        k = len(cyc)
        for j in range(k):
            i = index[(cyc[j], cyc[(j + 1) % k])]
            nxt = removed | {i}
            if nxt in seen:
                continue
            seen.add(nxt)
            if rec(nxt):
                return True
        return False

    return rec(frozenset())


def extendable_ordering(g: DiGraph, fixed) -> bool:
    """Can `fixed` extend to a topological ordering of g?

    Contract: an extension exists iff g plus a directed path threading the
    fixed vertices in order is acyclic, so that augmented graph is what is
    checked.
    """
    fixed = tuple(fixed)
    if len(set(fixed)) != len(fixed):
        raise ValueError("fixed ordering repeats a vertex")
    if not set(fixed) <= g.vertices:
        raise ValueError("fixed ordering mentions unknown vertices")
    out = {v: set(g.out_neighbors(v)) for v in g.vertices}
    for a, b in zip(fixed, fixed[1:]):
        out[a].add(b)
    color = {v: 0 for v in g.vertices}
    for root in g.vertices:
        if color[root]:
            continue
        stack = [(root, iter(out[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color[w] == 1:
                    return False
                if color[w] == 0:
                    color[w] = 1
                    stack.append((w, iter(out[w])))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return True


def _selection_acyclic(selection) -> bool:
    """Is the union of the ordering arcs of the selected constraints acyclic?"""
    out = {}
    for c in selection:
        for a, b in zip(c, c[1:]):
            out.setdefault(a, set()).add(b)
            out.setdefault(b, set())
    color = {v: 0 for v in out}
    for root in out:
        if color[root]:
            continue
        stack = [(root, iter(out[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color[w] == 1:
                    return False
                if color[w] == 0:
                    color[w] = 1
                    stack.append((w, iter(out[w])))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return True


def perm_formula_sat(f: PermFormula, cap: int = 10**7) -> bool:
    """Is some permutation of [n] satisfying every clause of f?

    Implemented by picking one constraint per clause and testing whether the
    union of their ordering arcs is acyclic.  Equivalence: a satisfying
    permutation satisfies one constraint per clause, and conversely an
    acyclic union extends to a total order, i.e. a satisfying permutation.
    This is property-tested against factorial enumeration at small n.
    """
    product = 1
    for cl in f.clauses:
        product *= len(cl)
        if product > cap:
            raise CapExceeded(f"selection space exceeds cap {cap}")
    return any(_selection_acyclic(sel)
               for sel in itertools.product(*f.clauses))


def perm_formula_sat_exhaustive(f: PermFormula, cap: int = 8) -> bool:
    """Factorial-enumeration reference for perm_formula_sat (n <= cap)."""
    if f.n > cap:
        raise CapExceeded(f"formula has {f.n} > {cap} indices")
    for perm in itertools.permutations(range(1, f.n + 1)):
        position = {idx: p for p, idx in enumerate(perm)}
        if all(any(all(position[a] < position[b] for a, b in zip(c, c[1:]))
                   for c in cl)
               for cl in f.clauses):
            return True
    return False


def hs_bruteforce(inst: HittingSetInstance) -> bool:
    """Does some one-cell-per-row selector hit every set of the instance?"""
    if inst.k > 6:
        raise CapExceeded(f"k = {inst.k} > 6")
    fam = [frozenset(f) for f in inst.sets]
    for cols in itertools.product(range(1, inst.k + 1), repeat=inst.k):
        choice = frozenset((r + 1, c) for r, c in enumerate(cols))
        if all(choice & f for f in fam):
            return True
    return False
