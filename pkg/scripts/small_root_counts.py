"""Small-root counts and reduced-word automaton sizes for the affine catalog."""

import argparse
import time
from dataclasses import dataclass

from coxwords.graph import catalog
from coxwords.recognizer import build_dfa
from coxwords.roots import StateCapExceeded, enumerate_small_roots


@dataclass
class CountConfig:
    max_rank: int = 6
    dfa_cap: int = 20000


def entries(cfg):
    for fam, lo in (("A", 1), ("B", 3), ("C", 2), ("D", 4)):
        for n in range(lo, cfg.max_rank + 1):
            yield catalog(fam, n)
    for fam in ("E6", "E7", "E8", "F4", "G2"):
        yield catalog(fam)


def run(cfg: CountConfig):
    print(f"{'graph':6} {'|V|':>3} {'small':>6} {'dfa':>7} {'secs':>6}")
    for e in entries(cfg):
        t0 = time.perf_counter()
        small = enumerate_small_roots(e.graph)
        try:
            dfa = str(len(build_dfa(e.graph, state_cap=cfg.dfa_cap)))
        except StateCapExceeded:
            dfa = f">{cfg.dfa_cap}"
        print(f"{e.name:6} {len(e.graph):3d} {len(small):6d} {dfa:>7} {time.perf_counter() - t0:6.2f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-rank", type=int, default=CountConfig.max_rank)
    p.add_argument("--dfa-cap", type=int, default=CountConfig.dfa_cap)
    run(CountConfig(**vars(p.parse_args())))
