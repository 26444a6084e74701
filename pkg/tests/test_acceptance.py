"""Acceptance criteria, one test per criterion, each with its own time limit.

A summary line per criterion is printed at the end of the run.
"""

import itertools
import random
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from coxwords.cli import main
from coxwords.field import FieldValue
from coxwords.game import (
    Converged,
    GamePosition,
    IllegalMove,
    OpenBeyondCap,
    all_orientations,
    bicoloured_position,
    explore,
    fire,
    initial_position,
    legal_moves,
    orientation_from_arrows,
    orientation_tour,
    replay_orientations,
)
from coxwords.graph import bicoloured_word, catalog, catalog_trees, extend_pendant, in_violation, increase_label, load_graph
from coxwords.recognizer import (
    check_speyer_property,
    is_reduced,
    oracle_is_reduced_deletion,
    reduce_fully,
    run_first_letter_path,
)
from coxwords.roots import enumerate_small_roots, is_big_step, root_from_ints

from conftest import path_graph

GRAPHS = Path(__file__).resolve().parent.parent / "graphs"
R = root_from_ints


@contextmanager
def within(seconds):
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.2f}s, limit {seconds}s"


def fresh_caches():
    enumerate_small_roots.cache_clear()


@pytest.mark.criterion(1, "A2~ has exactly six small roots")
def test_small_root_count(capsys):
    fresh_caches()
    with within(1):
        assert main(["smallroots", str(GRAPHS / "a2tilde.cox")]) == 0
        lines = capsys.readouterr().out.split("\n")[:-1]
        small = enumerate_small_roots(load_graph(GRAPHS / "a2tilde.cox"))
    assert sorted(lines) == sorted(["[1, 0, 0]", "[0, 1, 0]", "[0, 0, 1]", "[1, 1, 0]", "[0, 1, 1]", "[1, 0, 1]"])
    assert set(small) == {R(v) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 0, 1])}


@pytest.mark.criterion(2, "acac on A2~ shortens to ca")
def test_crossing_example(capsys):
    fresh_caches()
    with within(1):
        code = main(["reduce", str(GRAPHS / "a2tilde.cox"), "acac"])
        out = capsys.readouterr().out
        v = is_reduced("acac", catalog("A", 2).graph)
    assert code == 1
    assert "not reduced" in out and "shortened: ca" in out
    assert not v.reduced and v.witness.shortened == ("c", "a")


@pytest.mark.criterion(3, "first-letter path of abc on A2~")
def test_trace_example():
    fresh_caches()
    g = catalog("A", 2).graph
    with within(1):
        tr = run_first_letter_path("abc", g)
        small = enumerate_small_roots(g)
    assert tr.states == (R([1, 0, 0]), R([1, 1, 0]), R([1, 1, 2]))
    assert tr.crossing is None
    assert tr.states[1] in small and tr.states[2] not in small
    assert tr.states[2][2] - tr.states[1][2] == 2
    assert tr.first_big(small) == 2


@pytest.mark.criterion(4, "E6~ bicoloured centre values 1, 2, 4")
def test_e6_bicoloured_trace():
    fresh_caches()
    g = catalog("E6").graph
    centre = "a"
    assert len(g.neighbours[centre]) == 3
    with within(1):
        w = bicoloured_word(g, centre, 12)
        tr = run_first_letter_path(w, g)
        small = enumerate_small_roots(g)
    k = g.index[centre]
    values = [tr.states[i][k] for i, x in enumerate(w) if x == centre]
    assert values == [1, 2, 4]
    last = max(i for i, x in enumerate(w) if x == centre)
    assert tr.states[last][k] - tr.states[last - 1][k] == 2
    assert is_big_step(tr.states[last - 1][k], tr.states[last][k])
    assert tr.first_big(small) == last


SPEYER_GRAPHS = [("A", 2), ("A", 3), ("A", 4), ("B", 3), ("C", 2), ("D", 4), ("E6", None), ("F4", None), ("G2", None), ("A", 1)]


@pytest.mark.criterion(5, "IN-words on affine graphs are reduced")
def test_speyer_property():
    fresh_caches()
    with within(60):
        for k, (fam, n) in enumerate(SPEYER_GRAPHS):
            entry = catalog(fam, n)
            report = check_speyer_property(entry.graph, 1000, 40, rng_seed=1000 + k)
            assert report.ok and report.counterexamples == [], (entry.name, report.summary)


@pytest.mark.criterion(6, "is_reduced agrees with the matrix oracle")
def test_oracle_equivalence():
    fresh_caches()
    rng = random.Random(20261018)
    graphs = [path_graph(3), path_graph(3, 3), path_graph(4, 3), catalog("A", 2).graph]
    with within(120):
        for g in graphs:
            for n in range(9):
                for w in itertools.product(g.vertices, repeat=n):
                    assert is_reduced(w, g).reduced == oracle_is_reduced_deletion(w, g), w
            for _ in range(10**4):
                w = tuple(rng.choice(g.vertices) for _ in range(rng.randint(0, 12)))
                assert is_reduced(w, g).reduced == oracle_is_reduced_deletion(w, g), w


@pytest.mark.criterion(7, "abab on finite A2 is IN but not reduced")
def test_hypothesis_necessity():
    g = path_graph(3)
    with within(1):
        assert in_violation("abab", g) is None
        assert not is_reduced("abab", g).reduced
        assert reduce_fully("abab", g) == ("b", "a")


@pytest.mark.criterion(8, "G2~ diamond gives (r3, 1, 1)")
def test_g2_diamond():
    g = catalog("G2").graph
    with within(1):
        p = initial_position(g, "bac")
        assert p.values == R([0, 1, 0])
        assert p.orientation == orientation_from_arrows(g, [("b", "a"), ("b", "c")])
        ac = fire(fire(p, "a", g), "c", g)
        ca = fire(fire(p, "c", g), "a", g)
    assert ac == ca
    assert ac.values == (FieldValue.sqrt(3), FieldValue.rational(1), FieldValue.rational(1))


@pytest.mark.criterion(9, "inward-arrow G2~ position is terminal")
def test_terminal_position():
    g = catalog("G2").graph
    with within(1):
        p = GamePosition(R([0, 1, 0]), orientation_from_arrows(g, [("a", "b"), ("c", "b")]))
        assert legal_moves(p, g) == []
        for t in g.vertices:
            with pytest.raises(IllegalMove):
                fire(p, t, g)


@pytest.mark.criterion(10, "finite games converge, affine games stay open")
def test_convergence_dichotomy():
    a2 = path_graph(3)
    with within(30):
        finals = set()
        for w in ("ab", "ba"):
            res = explore(initial_position(a2, w), a2, depth_cap=50)
            assert isinstance(res, Converged)
            assert legal_moves(res.final, a2) == []
            finals.add(res.final)
        for g in (catalog("A", 2).graph, catalog("G2").graph):
            for s in g.vertices:
                for cap in (20, 40, 80):
                    assert isinstance(explore(bicoloured_position(g, s), g, depth_cap=cap), OpenBeyondCap)
    assert len(finals) == 2  # one per initial position


@pytest.mark.criterion(11, "orientation tours visit every orientation")
def test_orientation_tour():
    trees = [e for e in catalog_trees(8) if len(e.graph.edges) <= 7]
    assert {e.name for e in trees} >= {"G2~", "C2~", "E6~", "D4~", "B3~", "F4~"}
    rng = random.Random(11)
    with within(30):
        for e in trees:
            g = e.graph
            orientations = all_orientations(g)
            for start in rng.sample(orientations, min(4, len(orientations))):
                tour = orientation_tour(g, start)
                seen = set(replay_orientations(g, start, tour.moves))
                assert len(seen) == 2 ** len(g.edges), e.name


@pytest.mark.criterion(12, "pendant and label-raise closure on G2~ and C2~")
def test_pendant_and_raise_closure():
    g2, c2 = catalog("G2").graph, catalog("C", 2).graph
    variants = [
        extend_pendant(g2, "a", "p", 3),
        extend_pendant(g2, "c", "p", 4),
        increase_label(g2, "b", "c", 4),
        increase_label(g2, "a", "b", float("inf")),
        extend_pendant(c2, "b", "p", 3),
        extend_pendant(c2, "a", "p", 6),
        increase_label(c2, "a", "b", 5),
        increase_label(c2, "b", "c", 6),
    ]
    with within(60):
        for k, g in enumerate(variants):
            report = check_speyer_property(g, 1000, 40, rng_seed=1200 + k)
            assert report.ok and report.counterexamples == [], report.summary
