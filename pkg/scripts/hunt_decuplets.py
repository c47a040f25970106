"""Hunt repeating decuplets with the literal printed offsets and weigh the two readings."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from ptuples.hunter import RepeatSpec, brute_force_firsts, search_occurrences
from ptuples.primecore import factor_of, is_prime

PRINTED = (7989996643, 13291266463, 14024111323)


@dataclass(frozen=True)
class Config:
    offsets: tuple[int, ...] = (0, 24, 48, 94, 96, 186, 210, 256, 258, 270)
    residue: int = 2
    lo: int = 13
    hi: int = 10**11
    count: int = 4
    threads: int = 8
    oracle_limit: int = 10**5


def run(cfg: Config) -> None:
    spec = RepeatSpec(11, cfg.offsets, cfg.residue)
    t0 = time.perf_counter()
    occs = search_occurrences(spec, cfg.lo, cfg.hi, max_results=cfg.count, threads=cfg.threads)
    print(f"{len(occs)} occurrences in {time.perf_counter() - t0:.2f}s")
    for o in occs:
        tag = "printed" if o.first in PRINTED else "NOT PRINTED"
        print(f"  {o.first:>14} {tag:12} brackets "
              + ", ".join(f"{b.gap}: {b.left_value}|{b.left_factor} {b.right_value}|{b.right_factor}"
                          for b in o.brackets))
    print(f"trial-division oracle below {cfg.oracle_limit}: "
          f"{brute_force_firsts(spec, cfg.lo, cfg.oracle_limit)}")
    print("reading with last offset 370 instead of 270:")
    for f in PRINTED:
        alt = f + 370
        print(f"  {alt} prime={is_prime(alt)} factor={factor_of(alt)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--threads", type=int, default=8)
    ap.add_argument("--count", type=int, default=4)
    args = ap.parse_args()
    run(Config(threads=args.threads, count=args.count))
