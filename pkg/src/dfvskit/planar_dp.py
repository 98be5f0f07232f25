"""DFVS on planar digraphs by dynamic programming over a sphere-cut decomposition.

Per tree edge the table maps (X, P) to the fewest deletions strictly inside
the disk, where X is the deleted part of the edge's boundary set and P the
connectivity pattern the surviving subgraph induces on the rest.  Tables are
sparse: only finite entries exist, and patterns arise exclusively as joins
of child patterns, never by enumerating all patterns up front.  The arc-
deletion variant is not offered here: on planar digraphs it is
polynomial-time solvable by other means and out of scope.
"""

from __future__ import annotations

from .digraph import DiGraph, delete, is_acyclic
from .embedding import Embedding
from .errors import ValidationError
from .oracle import OracleResult
from .patterns import ConnectivityPattern, join
from .sphere_cut import (
    SphereCutDecomposition,
    build_sc_heuristic,
    preprocess_planar,
    validate_sc,
)


def _subsets_sorted(elems):
    import itertools
    elems = sorted(elems)
    out = []
    for k in range(len(elems) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(elems, k))
    return out


def leaf_table(g: DiGraph, arc_index: int, med):
    """Table of a leaf edge: the disk holds one arc and nothing deletable.

    Value 0 when X is empty and P is the arc's own pattern, or when X is
    nonempty and P is the bare reflexive pattern on the survivors.
    """
    u, v = g.arcs[arc_index]
    med = tuple(med)
    if frozenset(med) != {u, v}:
        raise ValidationError(f"leaf boundary {med} is not the arc endpoints")
    table = {}
    for x_set in _subsets_sorted(med):
        boundary = tuple(w for w in med if w not in x_set)
        pairs = {(w, w) for w in boundary}
        if not x_set:
            pairs.add((u, v))
        table[(x_set, ConnectivityPattern(boundary, pairs))] = (0, None)
    return table


def dp_merge(g: DiGraph, med_e, med_1, med_2, table_1, table_2):
    """Table of an internal edge from its two children.

    For every boundary deletion X, every deletion set Y drawn from the child
    boundaries that vanish at this edge, and every pair of finite child
    entries consistent with X and Y, the children's patterns either join
    into the parent pattern or the combination is infeasible.
    """
    med_e = tuple(med_e)
    set_e = frozenset(med_e)
    set_1, set_2 = frozenset(med_1), frozenset(med_2)
    if not set_e <= set_1 | set_2:
        raise ValidationError("parent boundary not covered by child boundaries")
    by_x1 = {}
    for (x1, p1), (val, _) in table_1.items():
        by_x1.setdefault(x1, []).append((p1, val))
    by_x2 = {}
    for (x2, p2), (val, _) in table_2.items():
        by_x2.setdefault(x2, []).append((p2, val))
    for lst in by_x1.values():
        lst.sort(key=lambda e: e[0].sort_key())
    for lst in by_x2.values():
        lst.sort(key=lambda e: e[0].sort_key())
    vanishing = sorted((set_1 | set_2) - set_e)
    table = {}
    for x_set in _subsets_sorted(med_e):
        for y_set in _subsets_sorted(vanishing):
            gone = x_set | y_set
            x1 = gone & set_1
            x2 = gone & set_2
            for p1, v1 in by_x1.get(x1, ()):
                for p2, v2 in by_x2.get(x2, ()):
                    joined = join(p1, p2, med_e, x_set)
                    if joined is None:
                        continue
                    cand = v1 + v2 + len(y_set)
                    key = (x_set, joined)
                    if key not in table or cand < table[key][0]:
                        table[key] = (cand, (y_set, (x1, p1), (x2, p2)))
    return table


def solve_dfvs_planar(g: DiGraph, emb: Embedding,
                      scd: SphereCutDecomposition) -> OracleResult:
    """Minimum DFVS of a connected bridgeless plane digraph."""
    report = validate_sc(g, emb, scd)
    if not report.ok:
        raise ValidationError(f"invalid sphere-cut decomposition: {report.error}")
    kids = scd.children()
    order = []
    stack = [(scd.root, False)]
    while stack:
        x, done = stack.pop()
        if done:
            if x != scd.root:
                order.append(x)
        else:
            stack.append((x, True))
            for c in reversed(kids[x]):
                stack.append((c, False))
    tables = {}
    for x in order:
        if x in scd.leaf_arc:
            tables[x] = leaf_table(g, scd.leaf_arc[x], scd.boundary[x])
        else:
            c1, c2 = kids[x]
            tables[x] = dp_merge(g, scd.boundary.get(x, ()),
                                 scd.boundary[c1], scd.boundary[c2],
                                 tables[c1], tables[c2])
    top = kids[scd.root][0]
    empty = ConnectivityPattern((), frozenset())
    entry = tables[top].get((frozenset(), empty))
    if entry is None:
        raise AssertionError("no finite entry at the root edge")
    optimum = entry[0]
    witness = set()
    stack = [(top, frozenset(), empty)]
    while stack:
        x, x_set, pattern = stack.pop()
        _, back = tables[x][(x_set, pattern)]
        if back is None:
            continue
        y_set, (x1, p1), (x2, p2) = back
        witness |= y_set
        c1, c2 = kids[x]
        stack.append((c1, x1, p1))
        stack.append((c2, x2, p2))
    if len(witness) != optimum or not is_acyclic(delete(g, frozenset(witness))):
        raise AssertionError("reconstructed planar DFVS witness failed validation")
    return OracleResult(optimum, frozenset(witness))


def solve_dfvs_planar_full(g: DiGraph, emb: Embedding) -> OracleResult:
    """Preprocess, decompose, and solve piece by piece; optima add up."""
    total = 0
    witness = set()
    for piece, piece_emb, _ in preprocess_planar(g, emb):
        scd = build_sc_heuristic(piece, piece_emb)
        res = solve_dfvs_planar(piece, piece_emb, scd)
        total += res.optimum
        witness |= res.witness
    if not is_acyclic(delete(g, frozenset(witness))):
        raise AssertionError("combined planar DFVS witness failed validation")
    return OracleResult(total, frozenset(witness))
