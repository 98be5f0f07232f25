import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfvskit.digraph import DiGraph
from dfvskit.patterns import (
    ChordRelation,
    ConnectivityPattern,
    canonical_boundary,
    clique_number,
    count_noncrossing,
    crossing,
    crossing_count,
    find_ordered_4clique,
    generate,
    induced_pattern,
    join,
    rewrite_step,
    schroeder_number,
    simplify,
)


def identity_pattern(boundary):
    return ConnectivityPattern(boundary, {(v, v) for v in boundary})


def random_relation(rng, n_points, n_chords):
    boundary = tuple(range(1, n_points + 1))
    n_chords = min(n_chords, n_points * (n_points - 1))
    pairs = set()
    while len(pairs) < n_chords:
        a, b = rng.sample(boundary, 2)
        pairs.add((a, b))
    return ChordRelation(boundary, pairs)


def random_disk_digraph(rng, max_dim=3, t_size=None):
    """Random sub-digraph of a grid with T on the outer boundary ring.

    Any sub-digraph of a plane grid stays drawn in a disk whose boundary
    passes through the outer ring, so the ring's cyclic order is the
    boundary order of T.
    """
    r = rng.randint(2, max_dim)
    c = rng.randint(2, max_dim)
    vid = lambda i, j: (i - 1) * c + j
    arcs = []
    for i in range(1, r + 1):
        for j in range(1, c + 1):
            for (ni, nj) in ((i, j + 1), (i + 1, j)):
                if ni <= r and nj <= c:
                    roll = rng.random()
                    if roll < 1 / 3:
                        arcs.append((vid(i, j), vid(ni, nj)))
                    elif roll < 2 / 3:
                        arcs.append((vid(ni, nj), vid(i, j)))
    g = DiGraph(r * c, arcs)
    ring = [vid(1, j) for j in range(1, c + 1)]
    ring += [vid(i, c) for i in range(2, r + 1)]
    ring += [vid(r, j) for j in range(c - 1, 0, -1)]
    ring += [vid(i, 1) for i in range(r - 1, 1, -1)]
    k = t_size or rng.randint(2, min(6, len(ring)))
    keep = sorted(rng.sample(range(len(ring)), k))
    return g, tuple(ring[i] for i in keep)


class TestBoundary:
    def test_canonical_rotation(self):
        assert canonical_boundary((3, 1, 2)) == (1, 2, 3)
        assert canonical_boundary(()) == ()

    def test_rejects_repeats(self):
        with pytest.raises(ValueError):
            canonical_boundary((1, 2, 1))

    def test_rotations_equal(self):
        p1 = identity_pattern((1, 2, 3))
        p2 = ConnectivityPattern((2, 3, 1), {(1, 1), (2, 2), (3, 3)})
        assert p1 == p2


class TestCrossing:
    BOUNDARY = (1, 2, 3, 4)

    def test_alternating_cross(self):
        assert crossing((1, 3), (2, 4), self.BOUNDARY)

    def test_nested_do_not_cross(self):
        assert not crossing((1, 2), (3, 4), self.BOUNDARY)

    def test_shared_endpoint_never_crosses(self):
        assert not crossing((1, 3), (1, 4), self.BOUNDARY)


class TestGenerate:
    def test_empty_relation_gives_identity(self):
        rel = ChordRelation((1, 2, 3), set())
        assert generate(rel) == identity_pattern((1, 2, 3))

    def test_crossing_pair_adds_tail_to_head(self):
        # Boundary a,b,a',b' clockwise as 1,2,3,4; chords (1,3),(2,4).  The
        # crossing forces (a,b') and, because every partition separating b
        # from a' is crossed by one of the two chords, also (b,a'): any two
        # directed paths realizing the chords in a disk meet at a vertex.
        rel = ChordRelation((1, 2, 3, 4), {(1, 3), (2, 4)})
        got = generate(rel)
        expected = {(v, v) for v in (1, 2, 3, 4)} | {(1, 3), (2, 4), (1, 4), (2, 3)}
        assert got.pairs == frozenset(expected)
        assert got.pairs == _generate_bruteforce(rel)

    def test_matches_bruteforce_definition(self):
        rng = random.Random(41)
        for _ in range(60):
            rel = random_relation(rng, rng.randint(2, 6), rng.randint(0, 5))
            got = generate(rel)
            assert got.pairs == _generate_bruteforce(rel)


def _generate_bruteforce(rel):
    """Direct transcription of the definition, partitioning by point subsets.

    A partition into two arcs = a contiguous cyclic interval and its
    complement; enumerate intervals by (start position, length).
    """
    pts = rel.boundary
    n = len(pts)
    out = {(v, v) for v in pts}
    for s, t in itertools.permutations(pts, 2):
        ok = True
        for start in range(n):
            for length in range(1, n):
                side = {pts[(start + i) % n] for i in range(length)}
                if s in side and t not in side:
                    if not any(a in side and b not in side for a, b in rel.pairs):
                        ok = False
        if ok:
            out.add((s, t))
    return frozenset(out)


class TestGenerateProperties:
    @settings(max_examples=150, deadline=None)
    @given(st.integers(2, 7), st.data())
    def test_contains_relation_and_is_quasiorder(self, n, data):
        boundary = tuple(range(1, n + 1))
        chords = [(a, b) for a in boundary for b in boundary if a != b]
        pairs = data.draw(st.lists(st.sampled_from(chords), max_size=6))
        rel = ChordRelation(boundary, pairs)
        pat = generate(rel)  # construction validates reflexive + transitive
        assert rel.pairs <= pat.pairs

    @settings(max_examples=100, deadline=None)
    @given(st.integers(2, 6), st.data())
    def test_idempotent(self, n, data):
        boundary = tuple(range(1, n + 1))
        chords = [(a, b) for a in boundary for b in boundary if a != b]
        pairs = data.draw(st.lists(st.sampled_from(chords), max_size=5))
        rel = ChordRelation(boundary, pairs)
        once = generate(rel)
        twice = generate(ChordRelation(boundary, {p for p in once.pairs if p[0] != p[1]}))
        assert once == twice

    def test_fixpoint_for_induced_patterns(self):
        rng = random.Random(43)
        for _ in range(100):
            g, t = random_disk_digraph(rng)
            pat = induced_pattern(g, t)
            rel = ChordRelation(pat.boundary, {p for p in pat.pairs if p[0] != p[1]})
            assert generate(rel) == pat


class TestCliqueMachinery:
    def seven_clique_relation(self, extra=()):
        boundary = tuple(range(1, 15))
        pairs = {(i, i + 7) for i in range(1, 8)} | set(extra)
        return ChordRelation(boundary, pairs)

    def test_clique_number_crossing_pair(self):
        rel = ChordRelation((1, 2, 3, 4), {(1, 3), (2, 4)})
        assert clique_number(rel) == 2

    def test_clique_number_parallel(self):
        rel = ChordRelation((1, 2, 3, 4), {(1, 2), (3, 4)})
        assert clique_number(rel) == 1

    def test_seven_spokes(self):
        assert clique_number(self.seven_clique_relation()) == 7

    def test_find_ordered_4clique_on_spokes(self):
        rel = self.seven_clique_relation()
        w = find_ordered_4clique(rel)
        assert w == (1, 2, 3, 4, 8, 9, 10, 11)

    def test_absent_below_seven(self):
        rel = ChordRelation((1, 2, 3, 4), {(1, 3), (2, 4)})
        assert find_ordered_4clique(rel) is None

    def test_witness_always_valid(self):
        rng = random.Random(47)
        for _ in range(50):
            rel = self.seven_clique_relation(
                {tuple(rng.sample(range(1, 15), 2)) for _ in range(rng.randint(0, 6))})
            w = find_ordered_4clique(rel)
            assert w is not None
            a, b, c, d, x, y, z, u = w
            chords = [(a, x), (b, y), (c, z), (d, u)]
            assert all(ch in rel.pairs for ch in chords)
            for c1, c2 in itertools.combinations(chords, 2):
                assert crossing(c1, c2, rel.boundary)
            pos = {v: i for i, v in enumerate(rel.boundary)}
            offs = [(pos[p] - pos[w[0]]) % len(rel.boundary) for p in w]
            assert offs == sorted(offs)

    def test_rewrite_step_example(self):
        rel = self.seven_clique_relation()
        base = ChordRelation(rel.boundary, {(1, 8), (2, 9), (3, 10), (4, 11)})
        out = rewrite_step(base, (1, 2, 3, 4, 8, 9, 10, 11))
        assert out.pairs == frozenset({(1, 8), (2, 10), (3, 9), (4, 11)})
        assert crossing_count(base) == 6 and crossing_count(out) == 5
        assert generate(out) == generate(base)

    def test_rewrite_rejects_missing_chords(self):
        base = ChordRelation(tuple(range(1, 15)), {(1, 8), (2, 9)})
        with pytest.raises(ValueError):
            rewrite_step(base, (1, 2, 3, 4, 8, 9, 10, 11))

    def test_rewrite_preserves_gen_and_decreases_crossings(self):
        rng = random.Random(53)
        for _ in range(40):
            rel = self.seven_clique_relation(
                {tuple(rng.sample(range(1, 15), 2)) for _ in range(rng.randint(0, 5))})
            w = find_ordered_4clique(rel)
            out = rewrite_step(rel, w)
            assert crossing_count(out) < crossing_count(rel)
            assert generate(out) == generate(rel)


class TestSimplify:
    def test_small_relation_unchanged(self):
        rel = ChordRelation((1, 2, 3, 4), {(1, 3), (2, 4)})
        assert simplify(rel) is rel

    def test_seven_clique_comes_down(self):
        rel = ChordRelation(tuple(range(1, 15)), {(i, i + 7) for i in range(1, 8)})
        out = simplify(rel)
        assert clique_number(out) <= 6
        assert generate(out) == generate(rel)

    def test_induced_patterns_simplify_to_same_gen(self):
        rng = random.Random(59)
        for _ in range(40):
            g, t = random_disk_digraph(rng)
            pat = induced_pattern(g, t)
            rel = ChordRelation(pat.boundary, {p for p in pat.pairs if p[0] != p[1]})
            out = simplify(rel)
            assert clique_number(out) <= 6
            assert generate(out) == pat


def _noncrossing_sets(n):
    """Exhaustive enumeration of pairwise non-crossing undirected chord sets."""
    boundary = tuple(range(1, n + 1))
    chords = list(itertools.combinations(boundary, 2))
    sets = []
    for bits in range(2 ** len(chords)):
        chosen = [c for i, c in enumerate(chords) if bits >> i & 1]
        if all(not crossing(c1, c2, boundary)
               for c1, c2 in itertools.combinations(chosen, 2)):
            sets.append(chosen)
    return sets


class TestCounting:
    def test_schroeder_numbers(self):
        assert [schroeder_number(j) for j in range(6)] == [1, 1, 3, 11, 45, 197]

    def test_known_values(self):
        assert count_noncrossing(3) == 8
        assert count_noncrossing(4) == 48
        assert count_noncrossing(5) == 352

    def test_matches_enumeration(self):
        for n in (3, 4, 5, 6):
            assert count_noncrossing(n) == len(_noncrossing_sets(n))

    def test_max_size_is_2n_minus_3(self):
        for n in (4, 5):
            assert max(len(s) for s in _noncrossing_sets(n)) == 2 * n - 3

    def test_rejects_tiny(self):
        with pytest.raises(ValueError):
            count_noncrossing(2)


class TestJoin:
    def test_transitivity_through_shared_vertex(self):
        p1 = ConnectivityPattern((1, 2), {(1, 1), (2, 2), (1, 2)})
        p2 = ConnectivityPattern((2, 3), {(2, 2), (3, 3), (2, 3)})
        got = join(p1, p2, (1, 3))
        assert got == ConnectivityPattern((1, 3), {(1, 1), (3, 3), (1, 3)})

    def test_two_cycle_has_no_join(self):
        p1 = ConnectivityPattern((1, 2), {(1, 1), (2, 2), (1, 2)})
        p2 = ConnectivityPattern((2, 1), {(2, 2), (1, 1), (2, 1)})
        assert join(p1, p2, (1, 2)) is None

    def test_matches_union_digraph_reachability(self):
        rng = random.Random(61)
        for _ in range(60):
            g, t = random_disk_digraph(rng)
            half = len(t) // 2 or 1
            t1, t2 = t[:half + 1], t[half:]
            from dfvskit.digraph import reachability
            p1 = induced_pattern(g, t1)
            p2 = induced_pattern(g, t2)
            got = join(p1, p2, t)
            union = DiGraph(sorted(set(t1) | set(t2)),
                            sorted({p for p in (p1.pairs | p2.pairs) if p[0] != p[1]}))
            from dfvskit.digraph import is_acyclic
            if not is_acyclic(union):
                assert got is None
            else:
                assert got == ConnectivityPattern(t, reachability(union, frozenset(t)))

    def test_precondition(self):
        p1 = identity_pattern((1, 2))
        p2 = identity_pattern((2, 3))
        with pytest.raises(ValueError):
            join(p1, p2, (1, 5))
