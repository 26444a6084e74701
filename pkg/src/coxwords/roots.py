"""Roots, the reflection action and the small-root set."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .field import ApproxValue, FieldValue, ONE, PrecisionExhausted, ZERO
from .graph import CoxeterGraph, UnknownLetter

Root = tuple  # one scalar per vertex, in graph vertex order

DEFAULT_STATE_CAP = 10**6


class MixedSignRoot(ArithmeticError):
    """A vector with both positive and negative entries showed up as a root."""


class StateCapExceeded(RuntimeError):
    pass


def _scalars(g: CoxeterGraph):
    if g.is_exact:
        return ZERO, ONE
    return ApproxValue(0.0), ApproxValue(1.0)


def unit_root(g: CoxeterGraph, s: str) -> Root:
    if s not in g:
        raise UnknownLetter(f"{s!r} is not a vertex")
    zero, one = _scalars(g)
    i = g.index[s]
    return tuple(one if k == i else zero for k in range(len(g)))


def component_sign(c) -> int:
    """Sign of a root coefficient.

    Nonzero coefficients of a root have absolute value at least 1, so an
    approximate coefficient whose enclosure lies inside (-1/2, 1/2) is zero.
    Enclosures straddling neither case raise PrecisionExhausted.
    """
    if isinstance(c, ApproxValue):
        if abs(c.value) + c.eps < 0.5:
            return 0
        if abs(c.value) - c.eps >= 1 - 2**-20:
            return 1 if c.value > 0 else -1
        raise PrecisionExhausted(f"root coefficient {c.value!r} +/- {c.eps!r} is undecidable")
    return c.sign()


def reflected_component(r: Root, i: int, g: CoxeterGraph):
    """New value of component i after reflecting r in vertex i."""
    acc = -r[i]
    for j, w in g.weighted_neighbours[i]:
        rj = r[j]
        if not (rj.is_zero() if isinstance(rj, FieldValue) else component_sign(rj) == 0):
            acc = acc + w * rj
    if isinstance(acc, ApproxValue) and component_sign(acc) == 0:
        return ApproxValue(0.0)
    return acc


def reflect(r: Root, x: str, g: CoxeterGraph) -> Root:
    """Reflect in vertex x: only the x-component changes."""
    try:
        i = g.index[x]
    except KeyError:
        raise UnknownLetter(f"{x!r} is not a vertex") from None
    new = reflected_component(r, i, g)
    return r[:i] + (new,) + r[i + 1 :]


def side(r: Root) -> int:
    """+1 for a positive root, -1 for a negative one."""
    signs = {component_sign(c) for c in r}
    signs.discard(0)
    if signs == {1}:
        return 1
    if signs == {-1}:
        return -1
    if not signs:
        raise MixedSignRoot("zero vector is not a root")
    raise MixedSignRoot(f"root has mixed signs: {render_root(r)}")


def is_big_step(old, new) -> bool:
    """True when a component moves by 2 or more."""
    d = new - old
    return (d - 2).sign() >= 0 or (d + 2).sign() <= 0


def render_root(r: Root) -> str:
    return "[" + ", ".join(str(c) for c in r) + "]"


@dataclass(frozen=True)
class SmallRootSet:
    graph: CoxeterGraph
    roots: frozenset
    # upward small steps (root, vertex, reflected root): the poset's cover edges
    edges: tuple = field(repr=False, default=())
    exact: bool = True

    def __contains__(self, r) -> bool:
        return r in self.roots

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self) -> Iterator[Root]:
        return iter(self.sorted())

    def sorted(self) -> list:
        return sorted(self.roots)


def is_small(r: Root, s: SmallRootSet) -> bool:
    return r in s


@lru_cache(maxsize=64)
def enumerate_small_roots(g: CoxeterGraph, state_cap: int = DEFAULT_STATE_CAP) -> SmallRootSet:
    """Closure of the unit roots under reflections that change a component by less than 2.

    Steps whose result is negative are not followed.
    """
    start = [unit_root(g, s) for s in g.vertices]
    seen = set(start)
    queue = deque(start)
    edges = []
    n = len(g)
    while queue:
        r = queue.popleft()
        for i in range(n):
            new = reflected_component(r, i, g)
            old = r[i]
            if component_sign(new) < 0 or is_big_step(old, new):
                continue
            nr = r[:i] + (new,) + r[i + 1 :]
            if nr == r:
                continue
            if (new - old).sign() > 0:
                edges.append((r, g.vertices[i], nr))
            if nr not in seen:
                if len(seen) >= state_cap:
                    raise StateCapExceeded(f"more than {state_cap} small roots")
                seen.add(nr)
                queue.append(nr)
    return SmallRootSet(g, frozenset(seen), tuple(edges), g.is_exact)


def small_roots_dot(s: SmallRootSet) -> str:
    names = {r: f"r{i}" for i, r in enumerate(s.sorted())}
    lines = ["digraph smallroots {", "  rankdir=LR;"]
    for r, name in names.items():
        label = " ".join(str(c) for c in r)
        lines.append(f'  {name} [shape=box, label="{label}"];')
    for a, x, b in s.edges:
        lines.append(f'  {names[a]} -> {names[b]} [label="{x}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def root_from_ints(values) -> Root:
    return tuple(FieldValue.rational(v) for v in values)
