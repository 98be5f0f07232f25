import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dfvskit.digraph import (
    DiGraph,
    bridge_arcs,
    bridges_and_components,
    delete,
    is_acyclic,
    parse_digraph,
    parse_digraph_and_rotations,
    reachability,
    topological_order,
    write_digraph,
)
from dfvskit.errors import ParseError
from dfvskit.oracle import min_dfvs_bruteforce

TRIANGLE = DiGraph(3, [(1, 2), (2, 3), (3, 1)])


def random_digraph(rng, n, p=0.3):
    arcs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)
            if u != v and rng.random() < p]
    return DiGraph(n, arcs)


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            DiGraph(2, [(1, 1)])

    def test_rejects_duplicate_arc(self):
        with pytest.raises(ValueError, match="duplicate"):
            DiGraph(2, [(1, 2), (1, 2)])

    def test_allows_antiparallel(self):
        g = DiGraph(2, [(1, 2), (2, 1)])
        assert g.m == 2

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="outside"):
            DiGraph(2, [(1, 3)])


class TestParsing:
    def test_smallest_graph(self):
        g = parse_digraph("2 1\n1 2\n")
        assert g == DiGraph(2, [(1, 2)])

    def test_triangle(self):
        g = parse_digraph("3 3\n1 2\n2 3\n3 1\n")
        assert g == TRIANGLE

    def test_self_loop_reports_line(self):
        with pytest.raises(ParseError, match="line 2.*self-loop"):
            parse_digraph("2 1\n1 1\n")

    def test_duplicate_reports_line(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_digraph("2 2\n1 2\n1 2\n")

    def test_out_of_range_reports_line(self):
        with pytest.raises(ParseError, match="line 2.*range"):
            parse_digraph("2 1\n1 5\n")

    def test_comments_ignored(self):
        g = parse_digraph("% a comment\n2 1\n% another\n1 2\n")
        assert g.m == 1

    def test_roundtrip_with_embedding(self):
        g = DiGraph(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
        rot = {1: (0, 3), 2: (0, 1), 3: (1, 2), 4: (2, 3)}
        text = write_digraph(g, rot)
        g2, rot2 = parse_digraph_and_rotations(text)
        assert g2 == g and rot2 == rot

    def test_roundtrip_plain(self):
        text = write_digraph(TRIANGLE)
        assert parse_digraph(text) == TRIANGLE
        assert write_digraph(parse_digraph(text)) == text


class TestTopologicalOrder:
    def test_path(self):
        assert topological_order(DiGraph(3, [(1, 2), (2, 3)])) == (1, 2, 3)

    def test_triangle_has_none(self):
        assert topological_order(TRIANGLE) is None

    def test_isolated_tie_break(self):
        assert topological_order(DiGraph(2, [])) == (1, 2)

    def test_tie_break_prefers_small_ids(self):
        g = DiGraph(4, [(3, 1), (4, 2)])
        assert topological_order(g) == (3, 1, 4, 2) or topological_order(g)[0] == 3
        # smallest available first: 3 and 4 are sources, 3 wins; then 1, 4, 2
        assert topological_order(g) == (3, 1, 4, 2)


def enumerate_cycles_bruteforce(g):
    """Independent oracle: does any vertex sequence form a directed cycle?"""
    for k in range(2, g.n + 1):
        for seq in itertools.permutations(sorted(g.vertices), k):
            if all(g.has_arc(seq[i], seq[(i + 1) % k]) for i in range(k)):
                return True
    return False


class TestAcyclicityAgainstCycleEnumeration:
    def test_exhaustive_n_le_3(self):
        for n in range(1, 4):
            pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
            for bits in range(2 ** len(pairs)):
                arcs = [a for i, a in enumerate(pairs) if bits >> i & 1]
                g = DiGraph(n, arcs)
                assert is_acyclic(g) == (not enumerate_cycles_bruteforce(g))

    def test_random_n_le_8(self):
        rng = random.Random(7)
        for _ in range(200):
            g = random_digraph(rng, rng.randint(2, 8))
            assert is_acyclic(g) == (not enumerate_cycles_bruteforce(g))


class TestReachability:
    def test_path_endpoints(self):
        g = DiGraph(3, [(1, 2), (2, 3)])
        assert reachability(g, {1, 3}) == frozenset({(1, 1), (3, 3), (1, 3)})

    def test_triangle_all_pairs(self):
        assert reachability(TRIANGLE, {1, 2}) == frozenset(
            {(1, 1), (2, 2), (1, 2), (2, 1)})

    def test_against_per_pair_search(self):
        rng = random.Random(3)
        for _ in range(50):
            g = random_digraph(rng, 6)
            t = frozenset(rng.sample(range(1, 7), 3))
            rel = reachability(g, t)
            for s, u in itertools.product(sorted(t), repeat=2):
                expected = s == u or _has_path(g, s, u)
                assert ((s, u) in rel) == expected

    def test_transitive_closure_idempotent(self):
        rng = random.Random(11)
        for _ in range(50):
            g = random_digraph(rng, 6)
            t = frozenset(rng.sample(range(1, 7), rng.randint(1, 5)))
            rel = reachability(g, t)
            closed = set(rel)
            for (a, b), (c, d) in itertools.product(rel, repeat=2):
                if b == c:
                    closed.add((a, d))
            assert frozenset(closed) == rel


def _has_path(g, s, u):
    seen = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        if v == u:
            return True
        for w in g.out_neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


class TestDelete:
    def test_delete_vertex_from_triangle(self):
        g = delete(TRIANGLE, {1})
        assert g.vertices == frozenset({2, 3}) and g.arcs == ((2, 3),)

    def test_delete_arc_from_triangle(self):
        g = delete(TRIANGLE, frozenset(), {2})  # arc (3,1)
        assert g.arcs == ((1, 2), (2, 3))

    def test_delete_everything(self):
        g = delete(TRIANGLE, {1, 2, 3})
        assert g.n == 0 and g.m == 0

    def test_ids_preserved(self):
        g = delete(DiGraph(5, [(4, 5)]), {1, 2})
        assert g.vertices == frozenset({3, 4, 5})


class TestBridgesAndComponents:
    def test_path_shatters(self):
        pieces = bridges_and_components(DiGraph(3, [(1, 2), (2, 3)]))
        assert [p.vertices for p, _ in pieces] == [frozenset({1}), frozenset({2}), frozenset({3})]
        assert all(p.m == 0 for p, _ in pieces)

    def test_triangle_stays(self):
        pieces = bridges_and_components(TRIANGLE)
        assert len(pieces) == 1 and pieces[0][0] == TRIANGLE

    def test_antiparallel_pair_is_not_a_bridge(self):
        g = DiGraph(2, [(1, 2), (2, 1)])
        assert bridge_arcs(g) == frozenset()

    def test_two_triangles_joined_by_bridge(self):
        arcs = [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4), (3, 4)]
        g = DiGraph(6, arcs)
        pieces = bridges_and_components(g)
        assert len(pieces) == 2
        total = sum(min_dfvs_bruteforce(p).optimum for p, _ in pieces)
        assert total == min_dfvs_bruteforce(g).optimum == 2

    def test_optimum_additive_over_pieces(self):
        rng = random.Random(19)
        for _ in range(100):
            g = random_digraph(rng, rng.randint(2, 7), p=0.25)
            whole = min_dfvs_bruteforce(g).optimum
            parts = sum(min_dfvs_bruteforce(p).optimum
                        for p, _ in bridges_and_components(g))
            assert whole == parts

    def test_never_increases_vertex_count(self):
        rng = random.Random(23)
        for _ in range(50):
            g = random_digraph(rng, 7)
            x = frozenset(rng.sample(range(1, 8), rng.randint(0, 3)))
            h = delete(g, x)
            pieces = bridges_and_components(h)
            assert sum(p.n for p, _ in pieces) <= g.n


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.data())
def test_arc_maps_point_back(n, data):
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    arcs = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=12)) if pairs else []
    g = DiGraph(n, arcs)
    for piece, arc_map in bridges_and_components(g):
        assert len(arc_map) == piece.m
        for local, original in enumerate(arc_map):
            assert piece.arcs[local] == g.arcs[original]
