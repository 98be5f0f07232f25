"""Seeded instance generation and the hardness-reduction chain.

Planar corpus: oriented grids and random bridgeless subgrid digraphs, with
embeddings and (for grids) analytic sphere-cut decompositions.  Hardness
chain: grid hitting-set instances reduce to 3-constraint permutation
formulas, those to structured 2-constraint formulas with a star tree
decomposition, and those to DFVS/DFAS instances built from or-gadgets.  All
generators are pure functions of their seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .digraph import DiGraph, bridge_arcs, bridges_and_components
from .embedding import Embedding
from .formulas import HittingSetInstance, PermFormula
from .sphere_cut import SphereCutDecomposition, grid_sc_decomposition, grid_underlying
from .treewidth import TreeDecomposition


def _rng(seed: int, *tags) -> random.Random:
    """Deterministic per-purpose stream split off a single 64-bit seed."""
    return random.Random(":".join([str(seed)] + [str(t) for t in tags]))


def gen_grid(rows: int, cols: int, seed: int):
    """A seeded orientation of the grid, its embedding, and its decomposition."""
    base, emb = grid_underlying(rows, cols)
    rng = _rng(seed, "grid", rows, cols)
    arcs = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in base.arcs]
    g = DiGraph(rows * cols, arcs)
    return g, emb, grid_sc_decomposition(rows, cols)


def gen_random_planar(n: int, seed: int):
    """A connected bridgeless planar digraph on about n vertices.

    A subgrid of the ceil(sqrt(n))-grid is thinned by random edge deletions
    that keep the underlying graph 2-edge-connected, then oriented at random;
    the embedding is inherited from the grid.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    rng = _rng(seed, "random-planar", n)
    rows = max(2, math.isqrt(n - 1) + 1)
    cols = max(2, -(-n // rows))
    base, emb = grid_underlying(rows, cols)
    kept = set(range(base.m))
    order = list(range(base.m))
    rng.shuffle(order)
    for i in order:
        if rng.random() >= 0.5:
            continue
        candidate = kept - {i}
        sub = DiGraph(base.n, [base.arcs[j] for j in sorted(candidate)])
        if bridge_arcs(sub):
            continue
        if len(bridges_and_components(sub)) != 1:
            continue
        kept = candidate
    arc_map = tuple(sorted(kept))
    arcs = []
    for j in arc_map:
        u, v = base.arcs[j]
        arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    g = DiGraph(base.n, arcs)
    return g, emb.restricted(g.vertices, arc_map)


def gen_hitting_set(k: int, sets: int, seed: int) -> HittingSetInstance:
    """Uniform thin sets: each row independently skips or picks a column.

    All-skip draws are redone; an empty set cannot be hit and cannot be
    encoded as a clause downstream.
    """
    rng = _rng(seed, "hitting-set", k, sets)
    fam = []
    for _ in range(sets):
        while True:
            cells = [(r, rng.randrange(0, k + 1)) for r in range(1, k + 1)]
            chosen = [(r, c) for r, c in cells if c > 0]
            if chosen:
                fam.append(chosen)
                break
    return HittingSetInstance(k, fam)


def reduce_hs_to_3formula(inst: HittingSetInstance, allow_small: bool = False) -> PermFormula:
    """The k-CNF (2k+1)-permutation 3-formula equivalent to the instance.

    Indices k+1..2k+1 are chained increasingly, each row index is anchored
    between k+1 and 2k+1, and each thin set F becomes the clause of
    constraints (k+j, i, k+j+1) over its cells (i, j).  The underlying
    equivalence argument assumes k >= 3; smaller k still yields an
    equivalent formula and is allowed for testing behind `allow_small`.
    """
    k = inst.k
    if k < 3 and not allow_small:
        raise ValueError("construction is stated for k >= 3; pass allow_small to override")
    if k < 1:
        raise ValueError("k must be positive")
    clauses = []
    for i in range(k + 1, 2 * k):
        clauses.append([(i, i + 1, i + 2)])
    for i in range(1, k + 1):
        clauses.append([(k + 1, i, 2 * k + 1)])
    for cells in inst.sets:
        if not cells:
            raise ValueError("cannot encode an empty set as a clause")
        clauses.append([(k + j, i, k + j + 1) for i, j in cells])
    return PermFormula(2 * k + 1, clauses)


def reduce_3formula_to_2formula(phi: PermFormula):
    """Structured 2-formula equivalent to phi, plus its star decomposition.

    Every 3-constraint (a,b,c) splits into the 2-constraints (a,b) and (b,c);
    a clause C of k' constraints becomes 2k'+2 clauses over a fresh block of
    2k'+2 chain indices: D_i / D_i' let the chain skip constraint i, while
    the unit clauses Z, Z' force the chain to flip exactly once, selecting
    one constraint whose both halves must then hold.  The decomposition is a
    star over the incidence graph: original indices at the center, one petal
    per original clause, singleton petals for reserved-but-unused indices.
    """
    k = phi.n
    if len(phi.clauses) > k:
        raise ValueError(f"at most {k} clauses fit the fresh-index blocks")
    for cl in phi.clauses:
        for c in cl:
            if len(c) != 3:
                raise ValueError("input clauses must consist of 3-constraints")
    n = k + (2 * k + 2) * k
    clauses = []
    petals = []
    used = set()
    for cnum, cl in enumerate(phi.clauses):
        kp = len(cl)
        base = k + cnum * (2 * k + 2)
        j = [None] + [base + t for t in range(1, 2 * kp + 3)]  # j[1]..j[2kp+2]
        used.update(j[1:])
        members = set(j[1:])
        first_emitted = len(clauses)
        for i, (a, b, c) in enumerate(cl, start=1):
            clauses.append([(j[2 * i], j[2 * i - 1]), (a, b), (j[2 * i + 1], j[2 * i + 2])])
            clauses.append([(j[2 * i], j[2 * i - 1]), (b, c), (j[2 * i + 1], j[2 * i + 2])])
        clauses.append([(j[1], j[2])])
        clauses.append([(j[2 * kp + 2], j[2 * kp + 1])])
        petals.append((members, range(first_emitted, len(clauses))))
    psi = PermFormula(n, clauses)
    center = frozenset(range(1, k + 1))
    bags = {1: center}
    edges = []
    node = 2
    for members, clause_range in petals:
        clause_ids = {n + c + 1 for c in clause_range}
        bags[node] = center | members | clause_ids
        edges.append((1, node))
        node += 1
    for idx in range(k + 1, n + 1):
        if idx not in used:
            bags[node] = frozenset({idx})
            edges.append((1, node))
            node += 1
    return psi, TreeDecomposition(bags, edges, root=1)


def incidence_graph(psi: PermFormula) -> DiGraph:
    """Bipartite index/clause incidence graph; clause c gets id n + c + 1."""
    arcs = []
    for c, cl in enumerate(psi.clauses):
        node = psi.n + c + 1
        for idx in sorted({i for con in cl for i in con}):
            arcs.append((idx, node))
    return DiGraph(psi.n + len(psi.clauses), arcs)


def or_gadget():
    """The 12-vertex clause gadget.

    Terminals x_i = 1,3,5 and x_i' = 2,4,6; internals v_ia, v_ib = 7..12.
    Returns (graph, ((x1,x1'),(x2,x2'),(x3,x3')), (e1,e2,e3)) where e_i is
    the arc index of the inner-cycle arc v_ia -> v_ib.
    """
    v1a, v1b, v2a, v2b, v3a, v3b = 7, 8, 9, 10, 11, 12
    arcs = [
        (1, v1a), (3, v2a), (5, v3a),
        (v1b, 2), (v2b, 4), (v3b, 6),
        (v1a, v1b), (v1b, v2a), (v2a, v2b),
        (v2b, v3a), (v3a, v3b), (v3b, v1a),
        (v1b, v3a), (v2b, v1a), (v3b, v2a),
    ]
    g = DiGraph(12, arcs)
    return g, ((1, 2), (3, 4), (5, 6)), (6, 8, 10)


@dataclass
class ReductionOutput:
    graph: DiGraph
    budget: int
    terminals: dict          # formula index -> vertex id (identity here)
    decomposition: TreeDecomposition


def reduce_2formula_to_dfvs(psi: PermFormula) -> ReductionOutput:
    """DFVS/DFAS instance of a structured 2-formula.

    Unit clauses become arcs between their terminals; each length-3 clause
    becomes a fresh or-gadget copy with terminals identified with the clause
    indices.  The budget is twice the number of length-3 clauses, and the
    same instance serves both deletion variants.
    """
    if not psi.is_structured():
        raise ValueError("formula must have clauses of length exactly 3 or 1, "
                         "without repeated indices")
    n = psi.n
    arcs = []
    seen = set()
    long_clauses = [cl for cl in psi.clauses if len(cl) == 3]
    for cl in psi.clauses:
        if len(cl) == 1:
            (a, b) = cl[0]
            if (a, b) not in seen:
                seen.add((a, b))
                arcs.append((a, b))
    bags = {1: frozenset(range(1, n + 1))}
    edges = []
    for c, cl in enumerate(long_clauses):
        base = n + 6 * c
        v1a, v1b, v2a, v2b, v3a, v3b = range(base + 1, base + 7)
        (a1, b1), (a2, b2), (a3, b3) = cl
        arcs.extend([
            (a1, v1a), (a2, v2a), (a3, v3a),
            (v1b, b1), (v2b, b2), (v3b, b3),
            (v1a, v1b), (v1b, v2a), (v2a, v2b),
            (v2b, v3a), (v3a, v3b), (v3b, v1a),
            (v1b, v3a), (v2b, v1a), (v3b, v2a),
        ])
        bags[c + 2] = bags[1] | frozenset(range(base + 1, base + 7))
        edges.append((1, c + 2))
    g = DiGraph(n + 6 * len(long_clauses), arcs)
    return ReductionOutput(
        graph=g,
        budget=2 * len(long_clauses),
        terminals={i: i for i in range(1, n + 1)},
        decomposition=TreeDecomposition(bags, edges, root=1),
    )
