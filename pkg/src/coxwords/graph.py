"""Coxeter graphs: data model, file formats, the affine catalog and word checks."""

from __future__ import annotations

import json
import math
import re
import string
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

import networkx as nx
from networkx.algorithms import isomorphism

from .field import EXACT_LABELS, weight

INF = math.inf

Word = tuple  # tuple[str, ...]


class GraphError(ValueError):
    pass


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnknownLetter(GraphError):
    pass


def _check_label(m) -> float | int:
    if m == INF:
        return INF
    if isinstance(m, bool) or not isinstance(m, int) or m < 3:
        raise GraphError(f"edge label must be an integer >= 3 or inf, got {m!r}")
    return m


def _edge_key(u: str, v: str) -> frozenset:
    return frozenset((u, v))


@dataclass(frozen=True)
class CoxeterGraph:
    """Vertices in a fixed order and labelled edges; absent pairs commute."""

    vertices: tuple
    edges: tuple  # ((u, v, label), ...) with u before v in vertex order

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex")
        pos = {v: i for i, v in enumerate(verts)}
        seen = set()
        canon = []
        for u, v, m in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            for x in (u, v):
                if x not in pos:
                    raise GraphError(f"edge endpoint {x!r} is not a vertex")
            key = _edge_key(u, v)
            if key in seen:
                raise GraphError(f"duplicate edge {u!r} {v!r}")
            seen.add(key)
            if pos[u] > pos[v]:
                u, v = v, u
            canon.append((u, v, _check_label(m)))
        canon.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(canon))

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple] = ()) -> CoxeterGraph:
        return cls(tuple(vertices), tuple(tuple(e) for e in edges))

    # -- derived data, computed once --------------------------------------

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def labels(self) -> dict:
        return {_edge_key(u, v): m for u, v, m in self.edges}

    @cached_property
    def neighbours(self) -> dict:
        nb = {v: [] for v in self.vertices}
        for u, v, _ in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        pos = self.index
        return {v: tuple(sorted(ns, key=pos.__getitem__)) for v, ns in nb.items()}

    @cached_property
    def weighted_neighbours(self) -> tuple:
        """Per vertex index: ((neighbour index, weight), ...)."""
        pos = self.index
        return tuple(
            tuple((pos[y], weight(self.label(x, y))) for y in self.neighbours[x])
            for x in self.vertices
        )

    @property
    def is_exact(self) -> bool:
        return all(m in EXACT_LABELS for _, _, m in self.edges)

    def label(self, u: str, v: str):
        """m_uv; 2 when there is no edge."""
        return self.labels.get(_edge_key(u, v), 2)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.index

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for u, v, m in self.edges:
            g.add_edge(u, v, label=m)
        return g

    def is_connected(self) -> bool:
        return len(self) > 0 and nx.is_connected(self.to_networkx())

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self) - 1

    def check_word(self, w: Iterable[str]) -> tuple:
        w = tuple(w)
        for x in w:
            if x not in self.index:
                raise UnknownLetter(f"letter {x!r} is not a vertex of the graph")
        return w

    # -- formats ----------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"vertex {v}" for v in self.vertices]
        lines += [f"edge {u} {v} {_fmt_label(m)}" for u, v, m in self.edges]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        edges = [[u, v, "inf" if m == INF else m] for u, v, m in self.edges]
        return json.dumps({"vertices": list(self.vertices), "edges": edges})


def _fmt_label(m) -> str:
    return "inf" if m == INF else str(m)


def _parse_label(tok, line=None):
    if tok in ("inf", "∞"):
        return INF
    try:
        m = int(tok)
    except (TypeError, ValueError):
        raise GraphFormatError(f"bad edge label {tok!r}", line) from None
    if m < 3:
        raise GraphFormatError(
            f"edge label {m} < 3 (commuting pairs are written by omitting the edge)", line
        )
    return m


_ID = re.compile(r"^[^\s,#]+$")


def parse_graph(text: str) -> CoxeterGraph:
    """Parse the line format (``vertex``/``edge`` lines) or its JSON equivalent."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    vertices: list = []
    edges: list = []
    seen_edges = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex" and len(parts) == 2:
            v = parts[1]
            if v in vertices:
                raise GraphFormatError(f"duplicate vertex {v!r}", lineno)
            vertices.append(v)
        elif kind == "edge" and len(parts) == 4:
            u, v = parts[1], parts[2]
            for x in (u, v):
                if x not in vertices:
                    raise GraphFormatError(f"unknown vertex {x!r}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at {u!r}", lineno)
            if _edge_key(u, v) in seen_edges:
                raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
            seen_edges.add(_edge_key(u, v))
            edges.append((u, v, _parse_label(parts[3], lineno)))
        else:
            raise GraphFormatError(f"syntax error: {raw.strip()!r}", lineno)
    return CoxeterGraph.build(vertices, edges)


def _parse_json(text: str) -> CoxeterGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict) or "vertices" not in data:
        raise GraphFormatError("JSON graph needs a 'vertices' list")
    vertices = [str(v) for v in data["vertices"]]
    if len(set(vertices)) != len(vertices):
        raise GraphFormatError("duplicate vertex")
    edges = []
    for e in data.get("edges", []):
        if len(e) != 3:
            raise GraphFormatError(f"edge must be [u, v, label], got {e!r}")
        u, v, m = str(e[0]), str(e[1]), e[2]
        for x in (u, v):
            if x not in vertices:
                raise GraphFormatError(f"unknown vertex {x!r}")
        edges.append((u, v, _parse_label(m)))
    try:
        return CoxeterGraph.build(vertices, edges)
    except GraphError as exc:
        raise GraphFormatError(str(exc)) from None


def load_graph(path) -> CoxeterGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------------------
# affine catalog
# ---------------------------------------------------------------------------

FAMILIES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")
_MIN_RANK = {"A": 1, "B": 3, "C": 2, "D": 4}


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    n: int
    graph: CoxeterGraph = field(compare=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.n}~" if self.family in _MIN_RANK else f"{self.family}~"


def _names(k: int) -> list:
    if k <= 26:
        return list(string.ascii_lowercase[:k])
    return [f"s{i}" for i in range(k)]


def _path_edges(vs, labels=None):
    labels = labels or {}
    return [(vs[i], vs[i + 1], labels.get(i, 3)) for i in range(len(vs) - 1)]


def parse_family(token: str, n: Optional[int] = None) -> tuple:
    """Accept ``A``, ``A2``, ``A2t``, ``A~``, ``E6t``, ``G2`` ... -> (family, n)."""
    m = re.fullmatch(r"([A-Ga-g])(\d*)(?:t|~|tilde)?", token.strip())
    if not m:
        raise GraphError(f"unknown family {token!r}")
    letter, digits = m.group(1).upper(), m.group(2)
    if letter in "EFG":
        if digits and n is not None and int(digits) != n:
            raise GraphError(f"conflicting ranks in {token!r} and {n}")
        fam = letter + (digits or (str(n) if n is not None else ""))
        if fam not in FAMILIES:
            raise GraphError(f"unknown family {token!r}")
        return fam, int(fam[1:])
    if digits and n is not None and int(digits) != n:
        raise GraphError(f"conflicting ranks in {token!r} and {n}")
    if digits:
        n = int(digits)
    if n is None:
        raise GraphError(f"family {letter} needs a rank n")
    return letter, n


def catalog(family: str, n: Optional[int] = None) -> CatalogEntry:
    """The affine Coxeter graph of the given type.

    Vertices are named a, b, c, ... in the order listed below.  For the
    rank-parameterised families the graph has n + 1 vertices.
    """
    family, n = parse_family(family, n)
    if family in _MIN_RANK and n < _MIN_RANK[family]:
        raise GraphError(f"{family}~_{n} is not an affine type (need n >= {_MIN_RANK[family]})")

    if family == "A":
        if n == 1:
            vs = _names(2)
            edges = [(vs[0], vs[1], INF)]
        else:
            vs = _names(n + 1)
            edges = _path_edges(vs) + [(vs[-1], vs[0], 3)]
    elif family == "B":
        # 4-bond at one end of a chain, fork at the other
        vs = _names(n + 1)
        chain = vs[: n - 1]
        edges = _path_edges(chain, {0: 4}) + [(chain[-1], vs[n - 1], 3), (chain[-1], vs[n], 3)]
    elif family == "C":
        vs = _names(n + 1)
        edges = _path_edges(vs, {0: 4, n - 1: 4})
    elif family == "D":
        vs = _names(n + 1)
        chain = vs[: n - 3]
        leaves = vs[n - 3 :]
        edges = _path_edges(chain) + [
            (chain[0], leaves[0], 3),
            (chain[0], leaves[1], 3),
            (chain[-1], leaves[2], 3),
            (chain[-1], leaves[3], 3),
        ]
    elif family == "E6":
        # centre a, arms b-c, d-e, f-g
        vs = _names(7)
        a, b, c, d, e, f, g = vs
        edges = [(a, b, 3), (b, c, 3), (a, d, 3), (d, e, 3), (a, f, 3), (f, g, 3)]
    elif family == "E7":
        vs = _names(8)
        chain = vs[:7]
        edges = _path_edges(chain) + [(chain[3], vs[7], 3)]
    elif family == "E8":
        vs = _names(9)
        chain = vs[:8]
        edges = _path_edges(chain) + [(chain[2], vs[8], 3)]
    elif family == "F4":
        vs = _names(5)
        edges = _path_edges(vs, {1: 4})
    elif family == "G2":
        vs = _names(3)
        edges = _path_edges(vs, {0: 6})
    else:  # pragma: no cover - parse_family filters
        raise GraphError(f"unknown family {family!r}")
    return CatalogEntry(family, n, CoxeterGraph.build(vs, edges))


def catalog_trees(max_rank: int = 8) -> list:
    """Every treelike catalog entry, the four infinite families up to ``max_rank``."""
    out = []
    for fam in ("B", "C", "D"):
        for n in range(_MIN_RANK[fam], max_rank + 1):
            out.append(catalog(fam, n))
    for fam in ("E6", "E7", "E8", "F4", "G2"):
        out.append(catalog(fam))
    return out


# ---------------------------------------------------------------------------
# intervening neighbours
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class INViolation:
    first: int
    second: int
    letter: str
    missing: tuple


def in_violation(w: Sequence[str], g: CoxeterGraph) -> Optional[INViolation]:
    """First pair of consecutive occurrences of a letter not separated by all its neighbours."""
    w = g.check_word(w)
    last = {}
    seen_since = {}
    for pos, x in enumerate(w):
        if x in last:
            missing = tuple(y for y in g.neighbours[x] if y not in seen_since[x])
            if missing:
                return INViolation(last[x], pos, x, missing)
        for y in g.neighbours[x]:
            if y in seen_since:
                seen_since[y].add(x)
        last[x] = pos
        seen_since[x] = set()
    return None


def has_intervening_neighbours(w: Sequence[str], g: CoxeterGraph) -> bool:
    return in_violation(w, g) is None


def extendable_letters(w: Sequence[str], g: CoxeterGraph) -> list:
    """Letters x such that w + x still has intervening neighbours (w assumed IN)."""
    last = {}
    for pos, x in enumerate(w):
        last[x] = pos
    out = []
    for x in g.vertices:
        if x not in last:
            out.append(x)
            continue
        since = set(w[last[x] + 1 :])
        if all(y in since for y in g.neighbours[x]):
            out.append(x)
    return out


def distances(g: CoxeterGraph, s: str) -> dict:
    dist = {s: 0}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        for y in g.neighbours[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def bicoloured_word(g: CoxeterGraph, s: str, length: int) -> tuple:
    """Prefix of s . (blacks . whites)^inf for the distance-parity colouring from s."""
    if s not in g:
        raise UnknownLetter(f"{s!r} is not a vertex")
    if length < 1:
        raise ValueError("length must be >= 1")
    if not g.is_connected():
        raise GraphError("graph is not connected")
    if not g.is_tree():
        raise GraphError("bicoloured words need a tree")
    dist = distances(g, s)
    blacks = [v for v in g.vertices if dist[v] % 2 == 1]
    whites = [v for v in g.vertices if dist[v] % 2 == 0]
    out = [s]
    while len(out) < length:
        out.extend(blacks)
        out.extend(whites)
    return tuple(out[:length])


# ---------------------------------------------------------------------------
# graph extensions and affine witnesses
# ---------------------------------------------------------------------------


def extend_pendant(g: CoxeterGraph, s: str, s_new: str, m=3) -> CoxeterGraph:
    if s not in g:
        raise UnknownLetter(f"{s!r} is not a vertex")
    if s_new in g:
        raise GraphError(f"vertex {s_new!r} already exists")
    _check_label(m)
    return CoxeterGraph.build(g.vertices + (s_new,), g.edges + ((s, s_new, m),))


def increase_label(g: CoxeterGraph, s: str, t: str, m) -> CoxeterGraph:
    k = g.labels.get(_edge_key(s, t))
    if k is None:
        raise GraphError(f"no edge between {s!r} and {t!r}")
    _check_label(m)
    if not m > k:
        raise GraphError(f"new label {_fmt_label(m)} must exceed current label {_fmt_label(k)}")
    edges = [(u, v, m if _edge_key(u, v) == _edge_key(s, t) else old) for u, v, old in g.edges]
    return CoxeterGraph.build(g.vertices, edges)


def _templates(max_vertices: int) -> list:
    out = []
    for fam in ("A", "B", "C", "D"):
        n = _MIN_RANK[fam]
        while n + 1 <= max_vertices:
            out.append(catalog(fam, n))
            n += 1
    for fam in ("E6", "E7", "E8", "F4", "G2"):
        entry = catalog(fam)
        if len(entry.graph) <= max_vertices:
            out.append(entry)
    out.sort(key=lambda e: len(e.graph))
    return out


@dataclass(frozen=True)
class AffineWitness:
    vertices: tuple
    entry: CatalogEntry
    mapping: dict = field(compare=False)  # graph vertex -> template vertex


def find_affine_witness(g: CoxeterGraph) -> Optional[AffineWitness]:
    """An induced subgraph shaped like an affine graph with labels >= the template's.

    Any such subgraph makes the group infinite.  Templates are tried smallest
    first; the search is exhaustive (VF2 induced-subgraph matching).
    """
    host = g.to_networkx()
    for entry in _templates(len(g)):
        pattern = entry.graph.to_networkx()
        matcher = isomorphism.GraphMatcher(
            host, pattern, edge_match=lambda a, b: a["label"] >= b["label"]
        )
        for mapping in matcher.subgraph_isomorphisms_iter():
            verts = tuple(v for v in g.vertices if v in mapping)
            return AffineWitness(verts, entry, dict(mapping))
    return None
