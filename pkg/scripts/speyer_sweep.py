"""Sample intervening-neighbours words on affine graphs and count non-reduced ones.

    python scripts/speyer_sweep.py --samples 1000 --max-len 40
"""

import argparse
import time
from dataclasses import dataclass

from coxwords.graph import catalog
from coxwords.recognizer import check_speyer_property


@dataclass
class SweepConfig:
    samples: int = 1000
    max_len: int = 40
    seed: int = 0
    max_rank: int = 5


def graphs(cfg: SweepConfig):
    for fam, lo in (("A", 1), ("B", 3), ("C", 2), ("D", 4)):
        for n in range(lo, cfg.max_rank + 1):
            yield catalog(fam, n)
    for fam in ("E6", "E7", "E8", "F4", "G2"):
        yield catalog(fam)


def run(cfg: SweepConfig) -> int:
    bad = 0
    print(f"{'graph':8} {'words':>6} {'bad':>4} {'secs':>6}")
    for k, entry in enumerate(graphs(cfg)):
        t0 = time.perf_counter()
        rep = check_speyer_property(entry.graph, cfg.samples, cfg.max_len, cfg.seed + k)
        n_bad = len(rep.counterexamples)
        bad += n_bad
        print(f"{entry.name:8} {cfg.samples:6d} {n_bad:4d} {time.perf_counter() - t0:6.2f}")
    return bad


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SweepConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    cfg = SweepConfig(**vars(p.parse_args()))
    bad = run(cfg)
    print(f"total counterexamples: {bad}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
