"""Connectivity patterns of disk-embedded digraphs and chord combinatorics.

A boundary is a cyclically ordered tuple of distinct vertex ids (clockwise
along a disk boundary); rotations denote the same boundary, so tuples are
canonicalized to start at the smallest id.  A connectivity pattern is a
reflexive transitive relation on a boundary; a chord relation is an arbitrary
loop-free relation.  `generate` maps chord relations to the pattern they
force across every separating partition of the circle; `simplify` rewrites a
relation until no 7 chords pairwise cross, preserving the generated pattern.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .digraph import DiGraph, is_acyclic, reachability


def canonical_boundary(points) -> tuple:
    """Rotate a cyclic sequence of distinct ids to start at the smallest."""
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise ValueError("boundary repeats a vertex")
    if not pts:
        return pts
    k = pts.index(min(pts))
    return pts[k:] + pts[:k]


@dataclass(frozen=True)
class ConnectivityPattern:
    """A quasi-order on a cyclically ordered boundary set."""

    boundary: tuple
    pairs: frozenset

    def __init__(self, boundary, pairs):
        boundary = canonical_boundary(boundary)
        pairs = frozenset((int(a), int(b)) for a, b in pairs)
        support = set(boundary)
        for a, b in pairs:
            if a not in support or b not in support:
                raise ValueError(f"pair ({a},{b}) not on the boundary")
        for v in boundary:
            if (v, v) not in pairs:
                raise ValueError(f"pattern not reflexive at {v}")
        for (a, b), (c, d) in itertools.product(pairs, repeat=2):
            if b == c and (a, d) not in pairs:
                raise ValueError(f"pattern not transitive: ({a},{b}),({c},{d})")
        object.__setattr__(self, "boundary", boundary)
        object.__setattr__(self, "pairs", pairs)

    @property
    def support(self) -> frozenset:
        return frozenset(self.boundary)

    def sort_key(self):
        return (self.boundary, tuple(sorted(self.pairs)))

    def restrict(self, keep) -> "ConnectivityPattern":
        keep = frozenset(keep)
        boundary = tuple(v for v in self.boundary if v in keep)
        pairs = {(a, b) for a, b in self.pairs if a in keep and b in keep}
        return ConnectivityPattern(boundary, pairs)


@dataclass(frozen=True)
class ChordRelation:
    """An arbitrary loop-free relation on a boundary (a set of directed chords)."""

    boundary: tuple
    pairs: frozenset

    def __init__(self, boundary, pairs):
        boundary = canonical_boundary(boundary)
        support = set(boundary)
        clean = set()
        for a, b in pairs:
            a, b = int(a), int(b)
            if a == b:
                continue  # loops never separate anything; strip them
            if a not in support or b not in support:
                raise ValueError(f"chord ({a},{b}) not on the boundary")
            clean.add((a, b))
        object.__setattr__(self, "boundary", boundary)
        object.__setattr__(self, "pairs", frozenset(clean))

    def sort_key(self):
        return (self.boundary, tuple(sorted(self.pairs)))


def crossing(c1, c2, boundary) -> bool:
    """Do two chords cross: all four endpoints distinct and alternating?

    Works for directed and undirected chords alike; chords sharing an
    endpoint never cross.
    """
    a, b = c1
    c, d = c2
    if len({a, b, c, d}) != 4:
        return False
    pos = {v: i for i, v in enumerate(boundary)}
    pa, pb, pc, pd = pos[a], pos[b], pos[c], pos[d]
    lo, hi = min(pa, pb), max(pa, pb)
    return (lo < pc < hi) != (lo < pd < hi)


def crossing_count(rel: ChordRelation) -> int:
    chords = sorted(rel.pairs)
    return sum(1 for x, y in itertools.combinations(chords, 2)
               if crossing(x, y, rel.boundary))


def induced_pattern(g: DiGraph, boundary) -> ConnectivityPattern:
    """The reachability relation of g on the boundary vertices."""
    boundary = tuple(boundary)
    return ConnectivityPattern(boundary, reachability(g, frozenset(boundary)))


def generate(rel: ChordRelation) -> ConnectivityPattern:
    """The connectivity pattern generated by a chord relation.

    (s, t) is included iff every partition of the circle into two arcs
    separating s from t is crossed by some relation pair with tail on s's
    side and head on t's side.  Partitions are enumerated by pairs of cut
    positions in the gaps between consecutive boundary points (cuts never
    sit on a point), which captures every partition up to open/closed
    boundary details.  Loops hold vacuously: no partition separates s from s.
    """
    pts = rel.boundary
    n = len(pts)
    pos = {v: i for i, v in enumerate(pts)}
    pairs = {(v, v) for v in pts}
    if n >= 2:
        # crossed[g1][g2]: does some chord run from arc [g1, g2) to arc [g2, g1)?
        # Gap g sits just before pts[g]; arc [g1, g2) holds positions g1..g2-1
        # cyclically.
        crossed = [[False] * n for _ in range(n)]
        for g1, g2 in itertools.permutations(range(n), 2):
            span = (g2 - g1) % n
            crossed[g1][g2] = any((pos[a] - g1) % n < span
                                  and (pos[b] - g1) % n >= span
                                  for a, b in rel.pairs)
        for s, t in itertools.permutations(pts, 2):
            ps, pt = pos[s], pos[t]
            ok = True
            for g1 in range(n):
                if not ok:
                    break
                for g2 in range(n):
                    if g1 == g2:
                        continue
                    span = (g2 - g1) % n
                    in_s = (ps - g1) % n < span
                    in_t = (pt - g1) % n < span
                    if in_s and not in_t and not crossed[g1][g2]:
                        ok = False
                        break
            if ok:
                pairs.add((s, t))
    return ConnectivityPattern(pts, pairs)


def clique_number(rel: ChordRelation, witness: bool = False):
    """Maximum number of pairwise crossing chords (exact search, <= 64 chords)."""
    chords = sorted(rel.pairs)
    if len(chords) > 64:
        raise ValueError("exact clique search is capped at 64 chords")
    cross = {c: set() for c in chords}
    for x, y in itertools.combinations(chords, 2):
        if crossing(x, y, rel.boundary):
            cross[x].add(y)
            cross[y].add(x)
    best = []

    def extend(clique, candidates):
        nonlocal best
        if len(clique) + len(candidates) <= len(best):
            return
        if not candidates:
            if len(clique) > len(best):
                best = list(clique)
            return
        for i, c in enumerate(candidates):
            extend(clique + [c], [d for d in candidates[i + 1:] if d in cross[c]])

    extend([], chords)
    if witness:
        return len(best), tuple(best)
    return len(best)


def find_ordered_4clique(rel: ChordRelation):
    """Four pairwise crossing chords (a,x),(b,y),(c,z),(d,u) with the eight
    endpoints in clockwise order, or None.

    Exists whenever seven chords pairwise cross: one chord of a 7-clique
    splits the circle into two arcs and every other clique chord has one end
    in each, so by pigeonhole three of them share their tail's arc; those
    three plus the splitting chord are the witness.  Returns the 8-tuple
    (a, b, c, d, x, y, z, u).
    """
    omega, clique = clique_number(rel, witness=True)
    if omega < 7:
        return None
    clique = clique[:7]
    first = clique[0]
    pos = {v: i for i, v in enumerate(rel.boundary)}
    n = len(rel.boundary)
    fa, fb = pos[first[0]], pos[first[1]]

    def strictly_between(p, lo, hi):
        return (p - lo) % n > 0 and (p - lo) % n < (hi - lo) % n

    tail_in_c1 = [ch for ch in clique[1:] if strictly_between(pos[ch[0]], fa, fb)]
    tail_in_c2 = [ch for ch in clique[1:] if strictly_between(pos[ch[0]], fb, fa)]
    if len(tail_in_c1) >= 3:
        group, start = tail_in_c1[:3] + [first], fa
    else:
        group, start = tail_in_c2[:3] + [first], fb
    # Tails occupy one arc starting at `start`, heads the complementary arc;
    # clockwise position along the circle measured from `start`.
    tails = sorted((ch[0] for ch in group), key=lambda v: (pos[v] - start) % n)
    heads = sorted((ch[1] for ch in group),
                   key=lambda v: (pos[v] - pos[tails[-1]]) % n)
    chords = {ch[0]: ch[1] for ch in group}
    assert [chords[t] for t in tails] == heads, "pigeonhole construction broken"
    return tuple(tails) + tuple(heads)


def rewrite_step(rel: ChordRelation, witness) -> ChordRelation:
    """Swap the heads of the two middle chords of an ordered 4-clique.

    With witness (a,b,c,d,x,y,z,u), replaces (b,y),(c,z) by (b,z),(c,y); the
    generated pattern is unchanged and the crossing count strictly drops.
    """
    if len(witness) != 8 or len(set(witness)) != 8:
        raise ValueError("witness must be 8 distinct boundary points")
    a, b, c, d, x, y, z, u = witness
    chords = [(a, x), (b, y), (c, z), (d, u)]
    for ch in chords:
        if ch not in rel.pairs:
            raise ValueError(f"witness chord {ch} not in the relation")
    for c1, c2 in itertools.combinations(chords, 2):
        if not crossing(c1, c2, rel.boundary):
            raise ValueError(f"witness chords {c1} and {c2} do not cross")
    pos = {v: i for i, v in enumerate(rel.boundary)}
    offsets = [(pos[p] - pos[witness[0]]) % len(rel.boundary) for p in witness]
    if offsets != sorted(offsets):
        raise ValueError("witness points are not in clockwise order")
    pairs = (rel.pairs - {(b, y), (c, z)}) | {(b, z), (c, y)}
    return ChordRelation(rel.boundary, pairs)


def simplify(rel: ChordRelation) -> ChordRelation:
    """Rewrite until at most 6 chords pairwise cross.

    Terminates because each step strictly decreases the crossing count; the
    generated pattern is preserved at every step.
    """
    current = rel
    while True:
        witness = find_ordered_4clique(current)
        if witness is None:
            return current
        current = rewrite_step(current, witness)


def schroeder_number(j: int) -> int:
    """Little Schroeder number s_j (1, 1, 3, 11, 45, ...; s_0 = s_1 = 1)."""
    if j < 0:
        raise ValueError("index must be nonnegative")
    a, b = 1, 1  # s_0, s_1
    if j == 0:
        return a
    for i in range(2, j + 1):
        num = 3 * (2 * i - 1) * b - (i - 2) * a
        assert num % (i + 1) == 0
        a, b = b, num // (i + 1)
    return b


def count_noncrossing(n: int) -> int:
    """Number of sets of pairwise non-crossing undirected chords on n points.

    Equals s_(n-2) * 2^n: a maximal non-crossing set is a polygon dissection
    plus an arbitrary subset of the n sides.
    """
    if n < 3:
        raise ValueError("need at least 3 points")
    return schroeder_number(n - 2) * 2 ** n


def join(p1: ConnectivityPattern, p2: ConnectivityPattern, med_parent, x=frozenset()):
    """Join two child patterns onto a parent boundary, or None.

    Builds the union digraph of both relations (shared vertices identified);
    if it has a directed cycle other than loops the patterns have no join,
    otherwise the result is its reachability relation restricted to
    med_parent minus x, keeping med_parent's cyclic order.
    """
    med_parent = tuple(med_parent)
    x = frozenset(x)
    target = [v for v in med_parent if v not in x]
    supports = p1.support | p2.support
    if not set(target) <= supports:
        raise ValueError("parent boundary not covered by the child supports")
    verts = sorted(supports)
    arcs = {(a, b) for a, b in (p1.pairs | p2.pairs) if a != b}
    union = DiGraph(verts, sorted(arcs))
    if not is_acyclic(union):
        return None
    return ConnectivityPattern(target, reachability(union, frozenset(target)))
