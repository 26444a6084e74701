import itertools
import random

import pytest
from hypothesis import given, strategies as st

from coxwords.field import FieldValue
from coxwords.game import (
    Converged,
    GamePosition,
    IllegalMove,
    OpenBeyondCap,
    all_orientations,
    bicoloured_position,
    check_diamond,
    explore,
    fire,
    initial_position,
    is_sink,
    legal_moves,
    orientation_from_arrows,
    orientation_path,
    orientation_tour,
    play_word,
    position_dot,
    reachable_positions,
    render_position,
    replay_orientations,
)
from coxwords.graph import GraphError, catalog, catalog_trees
from coxwords.recognizer import random_in_word, run_first_letter_path
from coxwords.roots import root_from_ints

from conftest import path_graph

R = root_from_ints
r3 = FieldValue.sqrt(3)


def g2_start(g2t):
    # b played first, a and c still to come
    return initial_position(g2t, "bac")


# -- positions and moves -------------------------------------------------------


def test_g2_initial_position(g2t):
    p = g2_start(g2t)
    assert p.values == R([0, 1, 0])
    assert p.orientation == orientation_from_arrows(g2t, [("b", "a"), ("b", "c")])
    assert legal_moves(p, g2t) == ["a", "c"]


def test_a2_initial_position(a2):
    p = initial_position(a2, "ab")
    assert p.values == R([1, 0])
    assert p.orientation == ("b",)


def test_initial_position_errors(a2t, g2t):
    with pytest.raises(GraphError):
        initial_position(g2t, "ba")  # c never occurs
    with pytest.raises(GraphError):
        initial_position(a2t, "abcb")  # b repeats without a in between
    with pytest.raises(ValueError):
        initial_position(a2t, "")


def test_g2_diamond(g2t):
    p = g2_start(g2t)
    pc = fire(p, "c", g2t)
    pa = fire(p, "a", g2t)
    assert pc.values == R([0, 1, 1])
    assert pa.values == (r3, FieldValue.rational(1), FieldValue.rational(0))
    both = fire(pc, "a", g2t)
    assert both == fire(pa, "c", g2t)
    assert both.values == (r3, FieldValue.rational(1), FieldValue.rational(1))
    assert check_diamond(p, g2t)


def test_terminal_position(g2t):
    p = GamePosition(R([0, 1, 0]), orientation_from_arrows(g2t, [("a", "b"), ("c", "b")]))
    assert is_sink(p.orientation, "b", g2t)
    assert legal_moves(p, g2t) == []
    with pytest.raises(IllegalMove):
        fire(p, "b", g2t)
    assert explore(p, g2t, depth_cap=5) == Converged(p, 0)


def test_fire_rejects_non_sink(g2t):
    with pytest.raises(IllegalMove):
        fire(g2_start(g2t), "b", g2t)


def test_render_and_dot(g2t):
    p = g2_start(g2t)
    assert render_position(p, g2t) == "0, 1, 0 | a<-b b->c"
    dot = position_dot(p, g2t)
    assert '"b" -> "a"' in dot and '"b" -> "c"' in dot and 'label="6"' in dot


AFFINE = [catalog("A", n) for n in range(1, 5)] + catalog_trees(6)


@pytest.mark.parametrize("entry", AFFINE, ids=lambda e: e.name)
def test_fresh_positions_have_moves(entry):
    g = entry.graph
    for s in g.vertices:
        assert legal_moves(bicoloured_position(g, s), g)


SMALL = [e for e in AFFINE if len(e.graph) <= 5] + [catalog("A", 2)]


@pytest.mark.parametrize("entry", SMALL, ids=lambda e: e.name)
def test_independence_and_diamond(entry):
    g = entry.graph
    for s in g.vertices:
        for p in reachable_positions(bicoloured_position(g, s), g, 10):
            moves = legal_moves(p, g)
            for x, y in itertools.combinations(moves, 2):
                assert g.label(x, y) == 2
            assert check_diamond(p, g)


def test_diamond_a2_tilde_depth_8(a2t):
    for w in ("abc", "acb", "bca"):
        for p in reachable_positions(initial_position(a2t, w), a2t, 8):
            assert check_diamond(p, a2t)


# -- words and games -----------------------------------------------------------


@given(st.sampled_from(AFFINE), st.integers(0, 2**32))
def test_in_words_play_as_games(entry, seed):
    g = entry.graph
    rng = random.Random(seed)
    w = random_in_word(g, 40, rng)
    if set(w) != set(g.vertices):
        return
    seq = play_word(g, w)
    states = run_first_letter_path(w, g).states
    assert [p.values for p in seq.positions] == list(states)
    assert all(c.sign() >= 0 for p in seq.positions for c in p.values)


# -- strong convergence ----------------------------------------------------------


@pytest.mark.parametrize("g", [path_graph(3), path_graph(3, 3), path_graph(4, 3), path_graph(5), path_graph(6)], ids=["A2", "A3", "B3", "I2(5)", "I2(6)"])
def test_finite_games_converge(g):
    lengths = set()
    for w in itertools.permutations(g.vertices):
        res = explore(initial_position(g, w), g, depth_cap=100)
        assert isinstance(res, Converged)
        assert legal_moves(res.final, g) == []
        lengths.add(res.length)
    assert lengths


def test_a2_game_length(a2):
    res = explore(initial_position(a2, "ab"), a2, depth_cap=10)
    assert res.length == 2
    assert res.final.values == R([0, 1])


@pytest.mark.parametrize("entry", AFFINE, ids=lambda e: e.name)
def test_affine_games_stay_open(entry):
    g = entry.graph
    for s in g.vertices[:2]:
        for cap in (2 * len(g), 4 * len(g)):
            assert isinstance(explore(bicoloured_position(g, s), g, depth_cap=cap), OpenBeyondCap)


def test_explore_state_cap(a2t):
    res = explore(bicoloured_position(a2t, "a"), a2t, depth_cap=1000, state_cap=10)
    assert isinstance(res, OpenBeyondCap)


# -- orientations ----------------------------------------------------------------


def test_orientation_path_trivial(a2):
    o = ("a",)
    assert orientation_path(a2, o, o).moves == ()
    assert orientation_path(a2, ("a",), ("b",)).moves == ("a",)
    assert orientation_path(a2, ("b",), ("a",)).moves == ("b",)


def test_orientation_path_needs_tree(a2t):
    o = all_orientations(a2t)[0]
    with pytest.raises(GraphError):
        orientation_path(a2t, o, o)
    with pytest.raises(GraphError):
        orientation_tour(a2t, o)


@pytest.mark.slow
@pytest.mark.parametrize("entry", [e for e in catalog_trees(8) if len(e.graph.edges) <= 7], ids=lambda e: e.name)
def test_orientation_path_all_pairs(entry):
    g = entry.graph
    orientations = all_orientations(g)
    for a in orientations:
        for b in orientations:
            seq = orientation_path(g, a, b)
            assert replay_orientations(g, a, seq.moves)[-1] == b


def test_orientation_path_is_shortest_on_small_trees(g2t):
    # compare with BFS over the orientation graph
    orientations = all_orientations(g2t)
    for a in orientations:
        dist = {a: 0}
        frontier = [a]
        while frontier:
            nxt = []
            for o in frontier:
                for t in g2t.vertices:
                    if is_sink(o, t, g2t):
                        q = replay_orientations(g2t, o, [t])[-1]
                        if q not in dist:
                            dist[q] = dist[o] + 1
                            nxt.append(q)
            frontier = nxt
        for b in orientations:
            assert len(orientation_path(g2t, a, b)) == dist[b]


def test_tour_small(a2, g2t, e6t):
    for g, count in ((a2, 2), (g2t, 4), (e6t, 64)):
        start = all_orientations(g)[0]
        tour = orientation_tour(g, start)
        seen = set(replay_orientations(g, start, tour.moves))
        assert len(seen) == count
    assert len(orientation_tour(a2, ("a",))) >= 1
