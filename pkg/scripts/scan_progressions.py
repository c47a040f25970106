"""Compare the longest observed prime runs in a + s*n with the divisor bounds."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from ptuples.progressions import ProgressionSpec, classify, enumerate_runs

PAIRS = ((5, 6), (7, 6), (35, 6), (55, 6), (25, 6), (3, 2), (7, 300), (11, 210), (13, 30))


@dataclass(frozen=True)
class Config:
    pairs: tuple[tuple[int, int], ...] = PAIRS
    indices: int = 10**6


def run(cfg: Config) -> None:
    print(f"{'a':>4} {'s':>4} {'p_M':>4} {'bound':>6} {'longest':>8}  first longest run")
    for a, s in cfg.pairs:
        rep = classify(a, s)
        runs = enumerate_runs(ProgressionSpec(a, s), 0, cfg.indices)
        best = max(runs, key=lambda r: (len(r.members), -r.start_index))
        bound = f"{rep.initial_max}/{rep.generic_max}"
        print(f"{a:>4} {s:>4} {rep.p_M:>4} {bound:>6} {len(best.members):>8}  {best.members}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--indices", type=int, default=10**6)
    run(Config(indices=ap.parse_args().indices))
