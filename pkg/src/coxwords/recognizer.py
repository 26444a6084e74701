"""Reduced-word recognition with the root automaton.

A token is a root riding along the word.  Every letter spawns a token at its
unit root; later letters reflect every live token.  A token that crosses to
the negative side at position j, having been spawned at position i, shows
that letters i and j can both be deleted.  Tokens that leave the small roots
are retired: they cannot produce the first reduction.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .field import ONE, ZERO
from .graph import CoxeterGraph, GraphError, extendable_letters, find_affine_witness
from .roots import (
    SmallRootSet,
    component_sign,
    StateCapExceeded,
    enumerate_small_roots,
    reflected_component,
    render_root,
    unit_root,
)


@dataclass(frozen=True)
class PathTrace:
    """States of the first-letter path; ``crossing`` is the 0-based index of the
    letter that made the root negative (that state is the last one kept)."""

    word: tuple
    states: tuple
    crossing: Optional[int] = None

    def first_big(self, small: SmallRootSet) -> Optional[int]:
        """Index of the first state outside the small roots, if any."""
        for k, r in enumerate(self.states):
            if r not in small:
                return k
        return None


@dataclass(frozen=True)
class ReductionWitness:
    i: int
    j: int
    shortened: tuple


@dataclass(frozen=True)
class Verdict:
    reduced: bool
    witness: Optional[ReductionWitness] = None
    exact: bool = True

    def __bool__(self) -> bool:
        return self.reduced


def run_first_letter_path(w: Sequence[str], g: CoxeterGraph) -> PathTrace:
    w = g.check_word(w)
    if not w:
        raise ValueError("the first-letter path needs a nonempty word")
    r = unit_root(g, w[0])
    states = [r]
    for pos in range(1, len(w)):
        i = g.index[w[pos]]
        new = reflected_component(r, i, g)
        r = r[:i] + (new,) + r[i + 1 :]
        states.append(r)
        if component_sign(new) < 0:
            return PathTrace(w, tuple(states), pos)
    return PathTrace(w, tuple(states), None)


def _delete(w: tuple, i: int, j: int) -> tuple:
    return w[:i] + w[i + 1 : j] + w[j + 1 :]


def is_reduced(w: Sequence[str], g: CoxeterGraph, small: Optional[SmallRootSet] = None) -> Verdict:
    """Token simulation over the small roots; returns the first reduction found."""
    w = g.check_word(w)
    if small is None:
        small = enumerate_small_roots(g)
    index = g.index
    tokens: dict = {}  # root -> origin position (earliest wins on merge)
    for pos, x in enumerate(w):
        i = index[x]
        moved: dict = {}
        for r, origin in tokens.items():
            new = reflected_component(r, i, g)
            if component_sign(new) < 0:
                return Verdict(False, ReductionWitness(origin, pos, _delete(w, origin, pos)), small.exact)
            nr = r[:i] + (new,) + r[i + 1 :]
            if nr in small.roots and (nr not in moved or origin < moved[nr]):
                moved[nr] = origin
        u = unit_root(g, x)
        if u not in moved:
            moved[u] = pos
        tokens = moved
    return Verdict(True, None, small.exact)


def reduce_fully(w: Sequence[str], g: CoxeterGraph) -> tuple:
    w = g.check_word(w)
    small = enumerate_small_roots(g)
    while True:
        v = is_reduced(w, g, small)
        if v.reduced:
            return w
        w = v.witness.shortened


# ---------------------------------------------------------------------------
# explicit automaton
# ---------------------------------------------------------------------------

DEAD = "dead"


@dataclass
class ReducedWordDFA:
    graph: CoxeterGraph
    states: list  # frozensets of small roots, states[0] is the initial state
    transitions: dict  # (state index, letter) -> state index or DEAD
    exact: bool = True

    def run(self, w: Sequence[str]):
        q = 0
        for x in w:
            q = self.transitions[q, x]
            if q == DEAD:
                return DEAD
        return q

    def accepts(self, w: Sequence[str]) -> bool:
        return self.run(self.graph.check_word(w)) != DEAD

    def __len__(self) -> int:
        # tracked-root states plus the dead state
        return len(self.states) + 1

    def to_dot(self) -> str:
        lines = ["digraph dfa {", "  rankdir=LR;", '  dead [shape=box, label="dead"];']
        for k, st in enumerate(self.states):
            label = "\\n".join(render_root(r) for r in sorted(st)) or "start"
            lines.append(f'  q{k} [shape=doublecircle, label="{label}"];')
        for (k, x), t in sorted(self.transitions.items(), key=lambda kv: (kv[0][0], self.graph.index[kv[0][1]])):
            target = "dead" if t == DEAD else f"q{t}"
            lines.append(f'  q{k} -> {target} [label="{x}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dfa_step(state: frozenset, x: str, g: CoxeterGraph, small: SmallRootSet):
    i = g.index[x]
    out = set()
    for r in state:
        new = reflected_component(r, i, g)
        if component_sign(new) < 0:
            return DEAD
        nr = r[:i] + (new,) + r[i + 1 :]
        if nr in small.roots:
            out.add(nr)
    out.add(unit_root(g, x))
    return frozenset(out)


def run_subset_automaton(w: Sequence[str], g: CoxeterGraph, small: Optional[SmallRootSet] = None) -> bool:
    """Run the subset automaton on the fly, without materialising its states."""
    w = g.check_word(w)
    if small is None:
        small = enumerate_small_roots(g)
    state = frozenset()
    for x in w:
        state = dfa_step(state, x, g, small)
        if state == DEAD:
            return False
    return True


def build_dfa(g: CoxeterGraph, state_cap: int = 10**5) -> ReducedWordDFA:
    """Subset construction over the small roots; every non-dead state accepts."""
    small = enumerate_small_roots(g)
    start = frozenset()
    states = [start]
    ids = {start: 0}
    trans = {}
    k = 0
    while k < len(states):
        st = states[k]
        for x in g.vertices:
            nxt = dfa_step(st, x, g, small)
            if nxt == DEAD:
                trans[k, x] = DEAD
                continue
            if nxt not in ids:
                if len(states) >= state_cap:
                    raise StateCapExceeded(f"DFA has more than {state_cap} states")
                ids[nxt] = len(states)
                states.append(nxt)
            trans[k, x] = ids[nxt]
        k += 1
    return ReducedWordDFA(g, states, trans, small.exact)


# ---------------------------------------------------------------------------
# independent oracle: group-element equality in the reflection representation
# ---------------------------------------------------------------------------

ORACLE_CAP = 12


class OracleCapExceeded(ValueError):
    pass


def _identity(n):
    return [[ONE if a == b else ZERO for b in range(n)] for a in range(n)]


def _generator_row(g: CoxeterGraph, s: int) -> list:
    # row s of the generator matrix; other rows are the identity
    n = len(g)
    row = [ZERO] * n
    row[s] = -ONE
    for t, w in g.weighted_neighbours[s]:
        row[t] = w
    return row


def _right_mul(m: list, g: CoxeterGraph, s: int) -> list:
    """M · sigma_s: column s is negated, each neighbour column t gains w_st times column s."""
    n = len(m)
    out = [row[:] for row in m]
    nb = g.weighted_neighbours[s]
    for a in range(n):
        col_s = m[a][s]
        if col_s.is_zero():
            continue
        out[a][s] = -col_s
        for t, w in nb:
            out[a][t] = m[a][t] + w * col_s
    return out


def _left_mul(g: CoxeterGraph, s: int, m: list) -> list:
    """sigma_s · M: only row s changes."""
    out = [row[:] for row in m]
    gen = _generator_row(g, s)
    n = len(m)
    new = []
    for b in range(n):
        acc = ZERO
        for k in range(n):
            c = gen[k]
            if not c.is_zero() and not m[k][b].is_zero():
                acc = acc + c * m[k][b]
        new.append(acc)
    out[s] = new
    return out


def word_matrix(w: Sequence[str], g: CoxeterGraph) -> list:
    m = _identity(len(g))
    for x in w:
        m = _right_mul(m, g, g.index[x])
    return m


def oracle_deletion_pair(w: Sequence[str], g: CoxeterGraph) -> Optional[tuple]:
    """A pair (i, j) whose deletion leaves the group element unchanged, if any.

    Deleting letters i < j preserves the element iff s_i · u = u · s_j for the
    subword u strictly between them; this is checked with exact matrices.
    """
    idx = [g.index[x] for x in w]
    n = len(g)
    for i in range(len(w)):
        u = _identity(n)
        for j in range(i + 1, len(w)):
            if _left_mul(g, idx[i], u) == _right_mul(u, g, idx[j]):
                return i, j
            u = _right_mul(u, g, idx[j])
    return None


def oracle_exchange_index(w: Sequence[str], y: str, g: CoxeterGraph) -> Optional[int]:
    """For reduced w: an index i such that w·y equals w with letter i deleted, if any.

    By the exchange condition w·y is reduced exactly when there is none.
    Walks suffix matrices right to left, so it costs O(|w|) matrix updates.
    """
    idx = [g.index[x] for x in g.check_word(w)]
    t = g.index[y]
    u = _identity(len(g))
    for i in range(len(idx) - 1, -1, -1):
        if _left_mul(g, idx[i], u) == _right_mul(u, g, t):
            return i
        u = _left_mul(g, idx[i], u)
    return None


def oracle_is_reduced_deletion(w: Sequence[str], g: CoxeterGraph, cap: int = ORACLE_CAP) -> bool:
    """Reducedness by the deletion condition, with no reference to roots or tokens."""
    w = g.check_word(w)
    if len(w) > cap:
        raise OracleCapExceeded(f"word length {len(w)} exceeds oracle cap {cap}")
    if not g.is_exact:
        raise GraphError("the matrix oracle needs exact edge labels")
    return _oracle_cached(w, g)


@lru_cache(maxsize=1 << 16)
def _oracle_cached(w: tuple, g: CoxeterGraph) -> bool:
    return oracle_deletion_pair(w, g) is None


def same_element(u: Sequence[str], v: Sequence[str], g: CoxeterGraph) -> bool:
    return word_matrix(g.check_word(u), g) == word_matrix(g.check_word(v), g)


# ---------------------------------------------------------------------------
# intervening-neighbours sampling
# ---------------------------------------------------------------------------


class GeneratorStarved(RuntimeError):
    pass


def random_in_word(g: CoxeterGraph, length: int, rng: random.Random) -> tuple:
    """Grow a word letter by letter, choosing uniformly among IN-preserving letters."""
    verts = g.vertices
    nb = g.neighbours
    pending = {v: set() for v in verts}  # neighbours still owed before v may repeat
    used = set()
    w = []
    for _ in range(length):
        choices = [v for v in verts if v not in used or not pending[v]]
        if not choices:
            raise GeneratorStarved(f"no letter extends {' '.join(w)}")
        x = rng.choice(choices)
        w.append(x)
        used.add(x)
        pending[x] = set(nb[x])
        for y in nb[x]:
            pending[y].discard(x)
    return tuple(w)


@dataclass
class SpeyerReport:
    graph: CoxeterGraph
    samples: int
    max_len: int
    seed: int
    counterexamples: list = field(default_factory=list)  # (word, witness)
    exact: bool = True

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        return f"{len(self.counterexamples)} counterexamples in {self.samples} samples (max length {self.max_len})"


def check_speyer_property(
    g: CoxeterGraph, samples: int, max_len: int, rng_seed: int, force: bool = False
) -> SpeyerReport:
    """Sample random IN-words and check each one is reduced."""
    if not force:
        if not g.is_connected():
            raise GraphError("graph is not connected (group not irreducible); use force to override")
        if find_affine_witness(g) is None:
            raise GraphError("no affine subgraph found, group not certified infinite; use force to override")
    rng = random.Random(rng_seed)
    small = enumerate_small_roots(g)
    report = SpeyerReport(g, samples, max_len, rng_seed, exact=small.exact)
    for _ in range(samples):
        w = random_in_word(g, rng.randint(1, max_len), rng)
        v = is_reduced(w, g, small)
        if not v.reduced:
            report.counterexamples.append((w, v.witness))
    return report


def first_counterexample_exhaustive(g: CoxeterGraph, max_len: int) -> Optional[tuple]:
    """Shortest IN-word that is not reduced, by exhaustive search (small graphs only)."""
    small = enumerate_small_roots(g)
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for x in extendable_letters(w, g):
                w2 = w + (x,)
                if not is_reduced(w2, g, small).reduced:
                    return w2
                nxt.append(w2)
        frontier = nxt
    return None
