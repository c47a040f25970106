"""Search for repeating (p-1)-tuples that share the distances of an exceptional p-tuple.

Candidates for the first member are generated from residue classes that survive
a CRT wheel over small primes, thinned by a lookup-table sieve over the
remaining primes below ELIM_LIMIT, and confirmed with the deterministic test.
An occurrence is only reported when it cannot be prolonged at any admissible
distance of its own pattern: the tails of the exceptional tuple itself
(11,17,23,29 after 5, or 157,...,907 after 7) are thereby excluded.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .constructor import PrimeTuple
from .primecore import MAX_MAGNITUDE, factor_of, is_prime, primes_up_to

ELIM_LIMIT = 1000
CLASS_CAP = 1 << 15
DEFAULT_HUNT_SEGMENT = 1 << 30


class HuntError(ValueError):
    pass


class NotFullTuple(HuntError):
    pass


class BracketingViolated(HuntError):
    pass


@dataclass(frozen=True)
class RepeatSpec:
    p: int
    offsets: tuple[int, ...]
    first_residue: int

    def __post_init__(self):
        p, offs = self.p, self.offsets
        if p < 3 or not is_prime(p):
            raise HuntError(f"p must be an odd prime, got {p}")
        if len(offs) != p - 1:
            raise HuntError(f"need {p - 1} offsets for p = {p}, got {len(offs)}")
        if offs[0] != 0 or any(o % 2 for o in offs) or list(offs) != sorted(set(offs)):
            raise HuntError(f"offsets must be even, strictly ascending and start at 0: {offs}")
        if not 0 < self.first_residue < p:
            raise HuntError(f"first_residue must lie in [1, {p}), got {self.first_residue}")

    @property
    def d1_class(self) -> int:
        """Least positive d1 with 2*d1 == first_residue (mod p)."""
        return self.first_residue * pow(2, -1, self.p) % self.p

    @property
    def gaps(self) -> tuple[int, ...]:
        o = self.offsets
        return tuple(b - a for a, b in zip(o, o[1:]))

    @cached_property
    def bracket_gaps(self) -> tuple[int, ...]:
        """Distinct pattern gaps in the admissible class; the smallest class gap if none."""
        d1, p = self.d1_class, self.p
        found = sorted({g for g in self.gaps if (g // 2 - d1) % p == 0})
        return tuple(found) if found else (2 * d1,)

    @property
    def primary_gap(self) -> int:
        first = self.gaps[0] if self.gaps else None
        return first if first in self.bracket_gaps else self.bracket_gaps[0]


@dataclass(frozen=True)
class Bracket:
    gap: int
    left_value: int
    left_factor: int | None
    right_value: int
    right_factor: int | None


@dataclass(frozen=True)
class Occurrence:
    first: int
    members: tuple[int, ...]
    left_bracket: tuple[int, int | None]
    right_bracket: tuple[int, int | None]
    brackets: tuple[Bracket, ...] = ()

    def to_dict(self) -> dict:
        return {
            "first": self.first,
            "members": list(self.members),
            "left_bracket": {"value": self.left_bracket[0], "factor": self.left_bracket[1]},
            "right_bracket": {"value": self.right_bracket[0], "factor": self.right_bracket[1]},
            "brackets": [
                {
                    "gap": b.gap,
                    "left": [b.left_value, b.left_factor],
                    "right": [b.right_value, b.right_factor],
                }
                for b in self.brackets
            ],
        }


def derive_repeat_spec(tup: PrimeTuple | Sequence[int], p: int | None = None) -> RepeatSpec:
    """Offsets of members[1:] relative to members[1], residue of members[1] mod p."""
    if isinstance(tup, PrimeTuple):
        members, p = tup.members, tup.spec.p
    else:
        members = tuple(int(m) for m in tup)
        if p is None:
            raise HuntError("p is required for a bare member list")
    if len(members) != p or members[0] != p:
        raise NotFullTuple(f"expected a {p}-tuple starting at {p}, got {members}")
    head = members[1]
    return RepeatSpec(p, tuple(m - head for m in members[1:]), head % p)


# ---------------------------------------------------------------- brackets


def _bracket(first: int, last: int, gap: int) -> Bracket:
    lv, rv = first - gap, last + gap
    return Bracket(gap, lv, factor_of(lv), rv, factor_of(rv))


def _blocked(b: Bracket) -> bool:
    return not is_prime(b.left_value) and not is_prime(b.right_value)


def _extends(first: int, last: int, spec: RepeatSpec) -> bool:
    return any(is_prime(first - g) or is_prime(last + g) for g in spec.bracket_gaps)


def verify_bracketing(occ: Occurrence, spec: RepeatSpec) -> tuple[Bracket, ...]:
    """Composite neighbours on both sides at every bracket gap of the pattern."""
    if occ.first % spec.p != spec.first_residue:
        raise HuntError(f"{occ.first} is not {spec.first_residue} mod {spec.p}")
    if any(not is_prime(m) for m in occ.members):
        raise HuntError(f"occurrence at {occ.first} has a composite member")
    out = tuple(_bracket(occ.members[0], occ.members[-1], g) for g in spec.bracket_gaps)
    for b in out:
        if not _blocked(b):
            raise BracketingViolated(
                f"occurrence at {occ.first} extends at distance {b.gap}: "
                f"{b.left_value} or {b.right_value} is prime"
            )
    return out


def make_occurrence(first: int, spec: RepeatSpec) -> Occurrence:
    members = tuple(first + o for o in spec.offsets)
    brackets = tuple(_bracket(members[0], members[-1], g) for g in spec.bracket_gaps)
    main = next(b for b in brackets if b.gap == spec.primary_gap)
    return Occurrence(
        first,
        members,
        (main.left_value, main.left_factor),
        (main.right_value, main.right_factor),
        brackets,
    )


# ---------------------------------------------------------------- prefilter


@dataclass(frozen=True)
class _Wheel:
    modulus: int
    classes: np.ndarray  # uint64, ascending
    tables: tuple[tuple[int, np.ndarray], ...]  # (q, bad[r]) for elimination
    empty: bool


def _allowed(q: int, offsets: Sequence[int]) -> list[int]:
    bad = {(-o) % q for o in offsets}
    return [r for r in range(q) if r not in bad]


_wheel_cache: dict[RepeatSpec, _Wheel] = {}


def _build_wheel(spec: RepeatSpec) -> _Wheel:
    if spec in _wheel_cache:
        return _wheel_cache[spec]
    p = spec.p
    mod = p
    classes = np.array([spec.first_residue], dtype=object)
    tables = []
    empty = False
    for q in primes_up_to(ELIM_LIMIT).tolist():
        if q == p:
            continue
        ok = _allowed(q, spec.offsets)
        if not ok:
            empty = True
            break
        if len(classes) * len(ok) <= CLASS_CAP and tables == []:
            # x == c (mod mod), x == a (mod q)
            inv = pow(mod, -1, q)
            classes = np.concatenate(
                [classes + mod * (((a - classes) * inv) % q) for a in ok]
            )
            mod *= q
        else:
            bad = np.ones(q, dtype=bool)
            bad[ok] = False
            tables.append((q, bad))
    # the fixed residue class mod p may itself annihilate a member
    if any((spec.first_residue + o) % p == 0 for o in spec.offsets):
        empty = True
    wheel = _Wheel(
        mod, np.sort(classes.astype(np.uint64)), tuple(tables), empty
    )
    _wheel_cache[spec] = wheel
    return wheel


def _confirm(firsts: Iterable[int], spec: RepeatSpec) -> list[int]:
    out = []
    span = spec.offsets[-1]
    for f in firsts:
        if all(is_prime(f + o) for o in spec.offsets) and not _extends(f, f + span, spec):
            out.append(f)
    return out


def _scan_segment(spec: RepeatSpec, a: int, b: int) -> list[int]:
    """Ascending first members in [a, b]."""
    found: list[int] = []
    p, res = spec.p, spec.first_residue
    small_hi = min(b, ELIM_LIMIT)
    if a <= small_hi:
        start = a + (res - a) % p
        found += _confirm(range(start, small_hi + 1, p), spec)
    a = max(a, ELIM_LIMIT + 1)
    if a > b:
        return found
    wheel = _build_wheel(spec)
    if wheel.empty:
        return found
    W = wheel.modulus
    # one wheel turn at a time keeps the candidate arrays bounded by CLASS_CAP
    for k in range(a // W, b // W + 1):
        base = k * W
        cand = wheel.classes + np.uint64(base)
        lo_i = np.searchsorted(cand, np.uint64(a), side="left")
        hi_i = np.searchsorted(cand, np.uint64(b), side="right")
        cand = cand[lo_i:hi_i]
        for q, bad in wheel.tables:
            if not cand.size:
                break
            cand = cand[~bad[(cand % np.uint64(q)).astype(np.intp)]]
        found += _confirm(cand.tolist(), spec)
    return found


def _segments(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    return [(s, min(s + size - 1, hi)) for s in range(lo, hi + 1, size)]


def _read_checkpoint(path: Path) -> set[tuple[int, int]]:
    done = set()
    if path.exists():
        for line in path.read_text().splitlines():
            parts = line.split()
            if len(parts) == 3:
                done.add((int(parts[0]), int(parts[1])))
    return done


def search_occurrences(
    spec: RepeatSpec,
    lo: int,
    hi: int,
    max_results: int | None = None,
    threads: int | None = None,
    segment: int = DEFAULT_HUNT_SEGMENT,
    checkpoint: str | os.PathLike | None = None,
) -> list[Occurrence]:
    """All occurrences with first member in [lo, hi], ascending.

    Segments listed in an existing checkpoint file are skipped, so a resumed
    hunt only returns occurrences from segments it actually scanned.
    """
    if lo < 2 or hi < lo or hi >= MAX_MAGNITUDE:
        raise HuntError(f"bad window [{lo}, {hi}]")
    if segment < 1:
        raise HuntError("segment size must be positive")
    threads = max(1, threads or 1)
    segs = _segments(lo, hi, segment)
    ckpt = Path(checkpoint) if checkpoint is not None else None
    if ckpt is not None:
        done = _read_checkpoint(ckpt)
        segs = [s for s in segs if s not in done]

    firsts: list[int] = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # batches of `threads` segments keep early exit deterministic
        for i in range(0, len(segs), threads):
            batch = segs[i : i + threads]
            for (a, b), got in zip(batch, pool.map(lambda s: _scan_segment(spec, *s), batch)):
                firsts += got
                if ckpt is not None:
                    with ckpt.open("a") as fh:
                        fh.write(f"{a} {b} {len(got)}\n")
            if max_results is not None and len(firsts) >= max_results:
                break
    if max_results is not None:
        firsts = firsts[:max_results]
    return [make_occurrence(f, spec) for f in firsts]


def brute_force_firsts(spec: RepeatSpec, lo: int, hi: int) -> list[int]:
    """Reference scan: test every f == first_residue (mod p) in [lo, hi] directly."""
    out = []
    span = spec.offsets[-1]
    for f in range(lo + (spec.first_residue - lo) % spec.p, hi + 1, spec.p):
        if all(_trial_prime(f + o) for o in spec.offsets):
            if not any(
                _trial_prime(f - g) or _trial_prime(f + span + g) for g in spec.bracket_gaps
            ):
                out.append(f)
    return out


def _trial_prime(n: int) -> bool:
    n = abs(n)
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True
