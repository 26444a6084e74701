"""The roots-and-chips game.

A position is a nonnegative value on every vertex plus an orientation of
every edge.  The arrow on an edge points at the endpoint whose turn it is.
A move fires a sink t: its value becomes ``-v_t + sum_y w_ty v_y`` (the root
reflection) and every edge at t is turned around so t becomes a source.
Firing is illegal when the new value would be negative.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

from .graph import CoxeterGraph, GraphError, UnknownLetter, distances, in_violation
from .roots import component_sign, reflected_component, unit_root

Orientation = tuple  # head vertex of each edge, aligned with CoxeterGraph.edges


class IllegalMove(ValueError):
    pass


class ConfluenceViolation(RuntimeError):
    """Two maximal plays disagreed; impossible for a polygon game."""


@dataclass(frozen=True)
class GamePosition:
    values: tuple
    orientation: Orientation

    def key(self) -> tuple:
        return self.values, self.orientation


@dataclass(frozen=True)
class MoveSequence:
    moves: tuple
    positions: tuple  # positions[0] is the start; len(positions) == len(moves) + 1

    @property
    def final(self):
        return self.positions[-1]

    def __len__(self) -> int:
        return len(self.moves)


# -- orientations --------------------------------------------------------------


def orientation_from_arrows(g: CoxeterGraph, arrows) -> Orientation:
    """Build an orientation from ``(tail, head)`` pairs covering every edge once."""
    heads = {}
    for tail, head in arrows:
        key = frozenset((tail, head))
        if key not in g.labels:
            raise GraphError(f"no edge between {tail!r} and {head!r}")
        if key in heads:
            raise GraphError(f"edge {tail}-{head} oriented twice")
        heads[key] = head
    if len(heads) != len(g.edges):
        raise GraphError("orientation must cover every edge")
    return tuple(heads[frozenset((u, v))] for u, v, _ in g.edges)


def is_sink(o: Orientation, t: str, g: CoxeterGraph) -> bool:
    return all(h == t for (u, v, _), h in zip(g.edges, o) if t in (u, v))


def sinks(o: Orientation, g: CoxeterGraph) -> list:
    return [t for t in g.vertices if is_sink(o, t, g)]


def flip_at(o: Orientation, t: str, g: CoxeterGraph) -> Orientation:
    """Every edge at t points away from t."""
    return tuple(
        (v if u == t else u) if t in (u, v) else h for (u, v, _), h in zip(g.edges, o)
    )


def all_orientations(g: CoxeterGraph) -> list:
    out = [()]
    for u, v, _ in g.edges:
        out = [o + (h,) for o in out for h in (u, v)]
    return out


def render_orientation(o: Orientation, g: CoxeterGraph) -> str:
    return " ".join(f"{u}->{v}" if h == v else f"{u}<-{v}" for (u, v, _), h in zip(g.edges, o))


# -- positions -----------------------------------------------------------------


def initial_position(g: CoxeterGraph, w: Sequence[str]) -> GamePosition:
    """Start of the game played by the IN-word w (which must use every vertex)."""
    w = g.check_word(w)
    if not w:
        raise ValueError("empty word")
    missing = [v for v in g.vertices if v not in w]
    if missing:
        raise GraphError(f"vertices never occur in the word: {' '.join(missing)}")
    bad = in_violation(w, g)
    if bad is not None:
        raise GraphError(f"word lacks intervening neighbours at letters {bad.first + 1} and {bad.second + 1}")
    first = {}
    for k, x in enumerate(w):
        first.setdefault(x, k)
    heads = tuple(u if first[u] < first[v] else v for u, v, _ in g.edges)
    s = w[0]
    return GamePosition(unit_root(g, s), flip_at(heads, s, g))


def bicoloured_position(g: CoxeterGraph, s: str) -> GamePosition:
    """Position after playing s, oriented as the bicoloured word from s would be.

    Vertices are ordered by distance from s (ties by declaration order), so on
    a tree the first occurrences match the bicoloured word.
    """
    if s not in g:
        raise UnknownLetter(f"{s!r} is not a vertex")
    if not g.is_connected():
        raise GraphError("graph is not connected")
    dist = distances(g, s)
    order = sorted(g.vertices, key=lambda v: (dist[v], g.index[v]))
    return initial_position(g, order)


def fired_value(p: GamePosition, t: str, g: CoxeterGraph):
    return reflected_component(p.values, g.index[t], g)


def legal_moves(p: GamePosition, g: CoxeterGraph) -> list:
    """Sinks whose fired value stays nonnegative, in declaration order."""
    return [t for t in sinks(p.orientation, g) if component_sign(fired_value(p, t, g)) >= 0]


def fire(p: GamePosition, t: str, g: CoxeterGraph) -> GamePosition:
    if t not in g:
        raise UnknownLetter(f"{t!r} is not a vertex")
    if not is_sink(p.orientation, t, g):
        raise IllegalMove(f"{t} is not a sink")
    new = fired_value(p, t, g)
    if component_sign(new) < 0:
        raise IllegalMove(f"firing {t} would make its value negative ({new})")
    i = g.index[t]
    return GamePosition(p.values[:i] + (new,) + p.values[i + 1 :], flip_at(p.orientation, t, g))


def play(p: GamePosition, moves: Sequence[str], g: CoxeterGraph) -> MoveSequence:
    positions = [p]
    for t in moves:
        p = fire(p, t, g)
        positions.append(p)
    return MoveSequence(tuple(moves), tuple(positions))


def play_word(g: CoxeterGraph, w: Sequence[str]) -> MoveSequence:
    """Initial position from w, then fire the rest of w letter by letter."""
    w = g.check_word(w)
    return play(initial_position(g, w), w[1:], g)


def check_diamond(p: GamePosition, g: CoxeterGraph) -> bool:
    moves = legal_moves(p, g)
    for a, b in combinations(moves, 2):
        try:
            ab = fire(fire(p, a, g), b, g)
            ba = fire(fire(p, b, g), a, g)
        except IllegalMove:
            return False
        if ab != ba:
            return False
    return True


def render_position(p: GamePosition, g: CoxeterGraph) -> str:
    return ", ".join(str(v) for v in p.values) + " | " + render_orientation(p.orientation, g)


def position_dot(p: GamePosition, g: CoxeterGraph) -> str:
    lines = ["digraph position {"]
    for v, val in zip(g.vertices, p.values):
        lines.append(f'  "{v}" [label="{v}: {val}"];')
    for (u, v, m), h in zip(g.edges, p.orientation):
        tail = u if h == v else v
        attr = "" if m == 3 else f' [label="{"inf" if m == float("inf") else m}"]'
        lines.append(f'  "{tail}" -> "{h}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- strong convergence --------------------------------------------------------


@dataclass(frozen=True)
class Converged:
    final: GamePosition
    length: int


@dataclass(frozen=True)
class OpenBeyondCap:
    depth: int
    states: int


ExploreResult = Union[Converged, OpenBeyondCap]


def explore(p: GamePosition, g: CoxeterGraph, depth_cap: int = 50, state_cap: int = 10**5) -> ExploreResult:
    """Breadth-first search over all plays from p.

    Every position has a well-defined distance from p in a polygon game;
    positions reached at two different depths, or more than one terminal
    position, raise :class:`ConfluenceViolation`.
    """
    if depth_cap <= 0 or state_cap <= 0:
        raise ValueError("caps must be positive")
    depth_of = {p: 0}
    frontier = [p]
    terminals = []
    depth = 0
    while frontier:
        nxt = []
        for q in frontier:
            moves = legal_moves(q, g)
            if not moves:
                terminals.append((q, depth))
                continue
            if depth >= depth_cap:
                return OpenBeyondCap(depth_cap, len(depth_of))
            for t in moves:
                r = fire(q, t, g)
                seen = depth_of.get(r)
                if seen is None:
                    depth_of[r] = depth + 1
                    nxt.append(r)
                elif seen != depth + 1:
                    raise ConfluenceViolation(f"position reached at depths {seen} and {depth + 1}")
            if len(depth_of) > state_cap:
                return OpenBeyondCap(depth, len(depth_of))
        frontier = nxt
        depth += 1
    finals = {q for q, _ in terminals}
    lengths = {d for _, d in terminals}
    if len(finals) != 1 or len(lengths) != 1:
        raise ConfluenceViolation(f"{len(finals)} terminal positions, lengths {sorted(lengths)}")
    return Converged(finals.pop(), lengths.pop())


def reachable_positions(p: GamePosition, g: CoxeterGraph, depth: int) -> list:
    seen = {p}
    frontier = [p]
    for _ in range(depth):
        nxt = []
        for q in frontier:
            for t in legal_moves(q, g):
                r = fire(q, t, g)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return list(seen)


# -- orientation reachability on trees -----------------------------------------


def firing_counts(g: CoxeterGraph, start: Orientation, target: Orientation) -> dict:
    """Fewest firings per vertex that turn ``start`` into ``target`` on a tree.

    Along an edge the endpoints fire alternately, beginning with the head.
    So if the head x keeps its turn, x and its neighbour y fire equally
    often; if the turn passes to y, x fires once more than y.
    """
    if not g.is_tree():
        raise GraphError("orientation paths need a tree")
    heads0 = {frozenset((u, v)): h for (u, v, _), h in zip(g.edges, start)}
    heads1 = {frozenset((u, v)): h for (u, v, _), h in zip(g.edges, target)}
    root = g.vertices[0]
    f = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.neighbours[x]:
            if y in f:
                continue
            key = frozenset((x, y))
            h0, h1 = heads0[key], heads1[key]
            extra = 0 if h0 == h1 else 1
            # f[h0] = f[other] + extra
            if h0 == x:
                f[y] = f[x] - extra
            else:
                f[y] = f[x] + extra
            queue.append(y)
    low = min(f.values())
    return {v: c - low for v, c in f.items()}


def orientation_path(g: CoxeterGraph, start: Orientation, target: Orientation) -> MoveSequence:
    """Sink firings (orientations only) from ``start`` to ``target`` on a tree.

    Repeatedly fires the first sink, in declaration order, that still owes
    firings.  Following arrows from a vertex with the most firings owed
    always ends at such a sink, so the loop never stalls.
    """
    remaining = firing_counts(g, start, target)
    o = start
    moves = []
    positions = [o]
    while any(remaining.values()):
        t = next((v for v in g.vertices if remaining[v] and is_sink(o, v, g)), None)
        if t is None:  # pragma: no cover - excluded by the argument above
            raise RuntimeError("orientation path stalled")
        o = flip_at(o, t, g)
        remaining[t] -= 1
        moves.append(t)
        positions.append(o)
    if o != target:  # pragma: no cover
        raise RuntimeError("orientation path missed its target")
    return MoveSequence(tuple(moves), tuple(positions))


def _gray(k: int) -> int:
    return k ^ (k >> 1)


def orientation_tour(g: CoxeterGraph, start: Orientation) -> MoveSequence:
    """A play through every orientation of a tree, targets taken in Gray-code order."""
    if not g.is_tree():
        raise GraphError("orientation tours need a tree")
    edges = g.edges
    total = 1 << len(edges)
    o = start
    moves: list = []
    positions = [o]
    visited = {o}
    for k in range(1, total):
        mask = _gray(k)
        target = tuple(
            ((v if h == u else u) if mask >> e & 1 else h) for e, ((u, v, _), h) in enumerate(zip(edges, start))
        )
        if target in visited:
            continue
        seg = orientation_path(g, o, target)
        moves.extend(seg.moves)
        positions.extend(seg.positions[1:])
        visited.update(seg.positions)
        o = target
    return MoveSequence(tuple(moves), tuple(positions))


def replay_orientations(g: CoxeterGraph, start: Orientation, moves: Sequence[str]) -> list:
    """Independent replay: check every move fires a sink, return the orientations seen."""
    o = start
    seen = [o]
    for t in moves:
        if not is_sink(o, t, g):
            raise IllegalMove(f"{t} is not a sink")
        o = flip_at(o, t, g)
        seen.append(o)
    return seen

