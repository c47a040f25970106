"""Rebuild the printed exceptional tuples greedily and compare member by member."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from ptuples.constructor import extend_left, greedy_construct
from ptuples.corpus import get_record


@dataclass(frozen=True)
class Config:
    cases: tuple[tuple[int, int, str], ...] = (
        (3, 1, "sec1-triplet"),
        (5, 3, "ex2.1-quintet-d3"),
        (5, 1, "ex2.1-quintet-d1"),
        (7, 2, "ex2.1-septet-d2"),
        (7, 3, "ex2.1-septet-d3"),
        (7, 5, "ex2.1-septet-d5"),
        (7, 6, "ex2.1-septet-d6"),
        (11, 1, "eq1-11tuple"),
        (17, 1, "eq5-17tuple"),
        (43, 2, "sec2-43tuple"),
    )
    extend: bool = False


def run(cfg: Config) -> int:
    mismatches = 0
    for p, d1, rid in cfg.cases:
        tup = greedy_construct(p, d1)
        printed = get_record(rid).members
        same = tup.members == printed
        mismatches += not same
        print(f"p={p:<3} d1={d1:<2} {'match' if same else 'DIFFERS':8} stop {tup.right_stop}")
        if not same:
            k = next((i for i, (a, b) in enumerate(zip(tup.members, printed)) if a != b), None)
            print(f"    greedy  {tup.members}")
            print(f"    printed {printed}  (first difference at index {k})")
        if cfg.extend:
            ext = extend_left(tup)
            print(f"    left extension to {len(ext)}: {ext.members[:len(ext) - p]} stop {ext.left_stop}")
    print(f"{len(cfg.cases) - mismatches}/{len(cfg.cases)} reproduced")
    return mismatches


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--extend", action="store_true", help="also extend each tuple leftwards")
    run(Config(extend=ap.parse_args().extend))
