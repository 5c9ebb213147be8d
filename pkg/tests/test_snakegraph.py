from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from orbicc.snakegraph import (
    SIDES,
    BandGraph,
    SnakeGraph,
    brute_force_matchings,
    build_band_graph,
    build_snake_graph,
    enclosed_tiles,
    enumerate_matchings,
    fence_poset,
    height_to_arc_vector,
    label_edges,
    matching_edges,
    matching_weight,
    min_max_matchings,
    snake_matching_edges,
    twist_parity_violations,
    twistable_tiles,
)
from orbicc.strings import StringWord, all_bands, all_strings, parse_word

FOUR_TILE_HEIGHTS = {(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (1, 0, 0, 1), (0, 0, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1)}


def heights(g):
    return {m.height for m in enumerate_matchings(g)}


def test_single_tile(ex1):
    g = build_snake_graph(ex1.g, StringWord.trivial(2))
    assert g.labels == (2,) and g.glue_dirs == ()
    assert heights(g) == {(0,), (1,)}
    assert len(fence_poset(g).hasse_arrows()) == 0


def test_glue_sequence_from_signs():
    assert SnakeGraph.from_signs((1, 1, -1, -1, 1)).glue_dirs == ("N", "E", "E", "N", "N")


def test_example1_snake(ex1):
    g = build_snake_graph(ex1.g, parse_word("beta^-1 rho beta"))
    assert g.labels == (2, 3, 3, 2)
    assert g.glue_dirs == ("E", "E", "N")
    assert [t.rel for t in g.tiles] == [1, -1, 1, -1]
    assert heights(g) == FOUR_TILE_HEIGHTS


def test_four_tile_poset():
    g = SnakeGraph.from_signs((-1, 1, 1))
    # stored as (lower, upper)
    assert fence_poset(g).hasse_arrows() == [(1, 2), (3, 2), (4, 3)]


def test_four_tile_band():
    b = BandGraph.from_signs((-1, 1, 1, -1))
    assert b.glue_rule == ("S", "N")
    assert (4, 1) in fence_poset(b).hasse_arrows()
    assert heights(b) == FOUR_TILE_HEIGHTS - {(1, 0, 0, 0)}


@pytest.mark.parametrize("signs, rule", [
    ((1, -1, 1, 1), ("W", "E")),
    ((1, -1, 1), ("W", "N")),
    ((1, -1), ("S", "N")),
    ((1, 1, -1), ("S", "E")),
])
def test_band_glue_cases(signs, rule):
    assert BandGraph.from_signs(signs).glue_rule == rule


def test_example2_band(ex2):
    b = build_band_graph(ex2.g, parse_word("band(alpha^-1 mu alpha delta^-1 eps delta)"))
    assert b.glue_rule == ("W", "E")
    assert b.snake.labels == (1, 2, 2, 1, 3, 3)
    assert len(enumerate_matchings(b)) == 14
    assert height_to_arc_vector(b, (1,) * 6, 4) == (2, 2, 2, 0)


def test_height_to_arc_vector(ex1):
    g = build_snake_graph(ex1.g, parse_word("beta^-1 rho beta"))
    assert height_to_arc_vector(g, (1, 0, 0, 1), 3) == (0, 2, 0)
    assert height_to_arc_vector(g, (0, 0, 0, 0), 3) == (0, 0, 0)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_min_max(d):
    for signs in ((1,) * (d - 1), (-1,) * (d - 1), tuple((-1) ** k for k in range(d - 1))):
        g = SnakeGraph.from_signs(signs)
        lo, hi = min_max_matchings(g)
        hs = sorted(heights(g))
        assert hs[0] == lo.height == (0,) * d and hs[-1] == hi.height == (1,) * d
        assert matching_edges(g, hi.height) == g.maximal_edges


@pytest.mark.parametrize("first", ["E", "N"])
@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_zigzag_unique_twistable_tile(first, d):
    # zig-zag: every glue direction differs from the previous one. With the
    # minimal matching holding S(G_1), an east glue forces N(G_1) as well, so
    # G_1 is the twistable tile of P_- and G_d that of P_+; north swaps them.
    g = SnakeGraph.from_signs([1 if first == "N" else -1] * (d - 1))
    assert all(a != b for a, b in zip(g.glue_dirs, g.glue_dirs[1:]))
    lo, hi = (1, d) if first == "E" else (d, 1)
    assert twistable_tiles(g, g.minimal_edges) == [lo]
    assert twistable_tiles(g, g.maximal_edges) == [hi]


def _cycle_check(g):
    snake = g.snake if isinstance(g, BandGraph) else g
    for m in enumerate_matchings(g):
        P = snake_matching_edges(g, m.height)
        boundary = Counter()
        for i, h in enumerate(m.height, start=1):
            if h:
                boundary.update(snake.edge(i, s) for s in SIDES)
        odd = {e for e, c in boundary.items() if c % 2}
        assert P ^ snake.minimal_edges == odd


@pytest.mark.parametrize("name", ["example1", "example2", "example44"])
def test_lattice_against_brute_force(pairs, name):
    g = pairs[name].g
    for w in all_strings(g, 6) + all_bands(g, 6):
        graph = build_band_graph(g, w) if w.__class__.__name__ == "BandWord" else build_snake_graph(g, w)
        found = {snake_matching_edges(graph, m.height): m.height for m in enumerate_matchings(graph)}
        brute = brute_force_matchings(graph)
        assert set(found) == set(brute)
        for P, h in found.items():
            assert enclosed_tiles(graph, P) == h
        assert not twist_parity_violations(graph)
        _cycle_check(graph)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.sampled_from([1, -1]), min_size=0, max_size=7))
def test_random_snake_graphs(signs):
    g = SnakeGraph.from_signs(tuple(signs))
    assert len(enumerate_matchings(g)) == len(brute_force_matchings(g)) == len(fence_poset(g).ideals())
    assert not twist_parity_violations(g)
    _cycle_check(g)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([1, -1]), min_size=2, max_size=8).filter(lambda s: len(set(s)) == 2))
def test_random_band_graphs(signs):
    b = BandGraph.from_signs(tuple(signs))
    brute = brute_force_matchings(b)
    assert {snake_matching_edges(b, m.height) for m in enumerate_matchings(b)} == set(brute)
    assert not twist_parity_violations(b)


EX1_LABELS = {
    (1, "S"): None, (1, "W"): "1", (1, "N"): "3", (1, "E"): None,
    (2, "S"): "2", (2, "N"): "3", (2, "E"): "3",
    (3, "S"): "3", (3, "E"): "2", (3, "N"): None,
    (4, "W"): "3", (4, "N"): "1", (4, "E"): None,
}

EX2_LABELS = {
    (1, "S"): "3", (1, "N"): "2", (1, "E"): "4", (1, "W"): None,
    (2, "S"): "1", (2, "N"): "2", (2, "E"): "2",
    (3, "S"): "2", (3, "E"): "1", (3, "N"): "4",
    (4, "W"): "2", (4, "E"): "3", (4, "N"): None,
    (5, "W"): "1", (5, "E"): "3", (5, "N"): "3",
    (6, "W"): "3", (6, "N"): "1", (6, "E"): None,
}


def test_labels_example1(ex1):
    assert label_edges(ex1.t, parse_word("beta^-1 rho beta")) == EX1_LABELS


def test_labels_example2(ex2):
    assert label_edges(ex2.t, parse_word("band(alpha^-1 mu alpha delta^-1 eps delta)")) == EX2_LABELS


def test_minimal_weight_example1(ex1):
    w = parse_word("beta^-1 rho beta")
    g = build_snake_graph(ex1.g, w)
    labels = label_edges(ex1.t, w, g)
    assert matching_weight(labels, matching_edges(g, (0, 0, 0, 0)), ex1.t) == (0, 0, 3)


def test_single_tile_weights(ex44):
    w = StringWord.trivial(2)
    g = build_snake_graph(ex44.g, w)
    labels = label_edges(ex44.t, w, g)
    sn = matching_weight(labels, {(1, "S"), (1, "N")}, ex44.t)
    we = matching_weight(labels, {(1, "W"), (1, "E")}, ex44.t)
    weights = {matching_weight(labels, matching_edges(g, h), ex44.t) for h in ((0,), (1,))}
    assert weights == {sn, we}


@pytest.mark.parametrize("name", ["example1", "example2", "example44"])
def test_tile_sides_are_triangle_edges(pairs, name):
    p = pairs[name]
    faces = p.t.faces()
    for w in all_strings(p.g, 4):
        g = build_snake_graph(p.g, w)
        labels = label_edges(p.t, w, g)
        for tile in g.tiles:
            arc = p.t.arc(tile.label)
            sides = Counter(labels[g.edge(tile.index, s)] for s in SIDES)
            # both neighbouring faces of the arc, minus the arc itself
            pool = Counter()
            for f in p.t.arc_faces(arc):
                tri = list(faces[f])
                tri.remove(arc)
                pool.update(x if p.t.is_arc(x) else None for x in tri)
            assert sides == pool
