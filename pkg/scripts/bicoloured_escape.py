"""How long the first-letter path of a bicoloured word stays among the small roots.

For every treelike affine graph and every start vertex, prints the index of
the first big state, next to 2*diameter+2 and 1 + h*|V| (h the Coxeter
number of the finite type).
"""

import argparse
from dataclasses import dataclass

import networkx as nx

from coxwords.graph import bicoloured_word, catalog_trees
from coxwords.recognizer import run_first_letter_path
from coxwords.roots import enumerate_small_roots

COXETER_NUMBER = {
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * n - 2,
    "E6": lambda n: 12,
    "E7": lambda n: 18,
    "E8": lambda n: 30,
    "F4": lambda n: 12,
    "G2": lambda n: 6,
}


@dataclass
class EscapeConfig:
    max_rank: int = 8
    word_len: int = 600


def escape(g, s, cfg):
    w = bicoloured_word(g, s, cfg.word_len)
    return run_first_letter_path(w, g).first_big(enumerate_small_roots(g))


def run(cfg: EscapeConfig):
    print(f"{'graph':6} {'start':5} {'escape':>6} {'2d+2':>5} {'1+h|V|':>7}")
    for entry in catalog_trees(cfg.max_rank):
        g = entry.graph
        d = nx.diameter(g.to_networkx())
        h = COXETER_NUMBER[entry.family](entry.n)
        for s in g.vertices:
            k = escape(g, s, cfg)
            flag = "" if k is not None and k <= 2 * d + 2 else "  *"
            print(f"{entry.name:6} {s:5} {k if k is not None else '-':>6} {2 * d + 2:5d} {1 + h * len(g):7d}{flag}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-rank", type=int, default=EscapeConfig.max_rank)
    p.add_argument("--word-len", type=int, default=EscapeConfig.word_len)
    run(EscapeConfig(**vars(p.parse_args())))
