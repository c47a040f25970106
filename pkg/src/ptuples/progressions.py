"""Prime runs in arithmetic progressions a + s*n and the divisor bounds on their length."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .primecore import (
    SIEVE_BASE_LIMIT,
    prime_factors,
    factor_of,
    is_prime,
    primes_up_to,
)


class ProgressionError(ValueError):
    pass


class NotCoprime(ProgressionError):
    pass


class OddStep(ProgressionError):
    pass


@dataclass(frozen=True)
class ProgressionSpec:
    a: int
    s: int

    def __post_init__(self):
        if self.s < 2 or self.s % 2:
            raise OddStep(f"step must be even and >= 2, got {self.s}")
        if self.a < 2:
            raise ProgressionError(f"first term must be >= 2, got {self.a}")
        if math.gcd(self.a, self.s) != 1:
            raise NotCoprime(f"gcd({self.a}, {self.s}) = {math.gcd(self.a, self.s)}")

    def term(self, n: int) -> int:
        return self.a + self.s * n


@dataclass(frozen=True)
class ClassificationReport:
    a: int
    s: int
    a_divisors: tuple[int, ...]
    step_divisors: tuple[int, ...]
    p_M: int
    generic_max: int
    initial_max: int
    prime_power_flag: bool
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "s": self.s,
            "a_divisors": list(self.a_divisors),
            "step_divisors": list(self.step_divisors),
            "p_M": self.p_M,
            "generic_max": self.generic_max,
            "initial_max": self.initial_max,
            "prime_power_flag": self.prime_power_flag,
            "notes": list(self.notes),
        }


def _odd_prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(sorted({q for q in prime_factors(n) if q != 2}))


def classify(a: int, s: int) -> ClassificationReport:
    """Longest possible prime runs in a + s*n.

    p_M is the smallest odd prime not dividing s: every p_M consecutive terms
    contain a multiple of p_M, so runs stop at p_M - 1 terms unless the run
    passes through p_M itself, which can only happen at n = 0 with a = p_M.
    """
    spec = ProgressionSpec(a, s)
    a_divs = _odd_prime_divisors(spec.a)
    s_divs = _odd_prime_divisors(spec.s)
    p_M = 3
    while spec.s % p_M == 0:
        p_M += 2
        while not is_prime(p_M):
            p_M += 2
    generic = (min(p_M, a_divs[0]) if a_divs else p_M) - 1
    power = len(a_divs) == 1 and spec.a != a_divs[0] and _is_power_of(spec.a, a_divs[0])
    initial = p_M if spec.a == p_M else generic

    notes = []
    if power:
        notes.append(f"a = {a_divs[0]}^l with l >= 2: {a_divs[0]} is not a term, no exceptional tuple")
    if spec.a == p_M:
        notes.append(f"a = p_M = {p_M}: at most one {p_M}-run, at n = 0")
    notes.append("longer multiplets may exist outside the progression; they are not searched")
    return ClassificationReport(
        spec.a, spec.s, a_divs, s_divs, p_M, generic, initial, power, tuple(notes)
    )


def _is_power_of(n: int, q: int) -> bool:
    while n % q == 0:
        n //= q
    return n == 1


@dataclass(frozen=True)
class PrimeRun:
    start_index: int
    members: tuple[int, ...]
    # (value, smallest factor); None when the neighbour would have index -1
    left_terminator: Optional[tuple[int, Optional[int]]]
    right_terminator: tuple[int, Optional[int]]

    def to_dict(self) -> dict:
        left = (
            "window-edge"
            if self.left_terminator is None
            else {"value": self.left_terminator[0], "factor": self.left_terminator[1]}
        )
        return {
            "start_index": self.start_index,
            "members": list(self.members),
            "left_terminator": left,
            "right_terminator": {
                "value": self.right_terminator[0],
                "factor": self.right_terminator[1],
            },
        }


def _term_flags(spec: ProgressionSpec, n0: int, count: int) -> np.ndarray:
    """Primality of terms n0 .. n0+count-1, sieved along the progression."""
    a, s = spec.a, spec.s
    flags = np.ones(count, dtype=bool)
    t_max = a + s * (n0 + count - 1)
    root = math.isqrt(t_max)
    for q in primes_up_to(min(root, SIEVE_BASE_LIMIT)).tolist():
        if s % q == 0:
            continue  # q never divides a term when gcd(a, s) = 1
        # a + s*n == 0 (mod q)  <=>  n == -a * s^-1 (mod q)
        r = (-a * pow(s, -1, q)) % q
        first = n0 + (r - n0) % q
        if first < n0 + count and a + s * first == q:
            first += q
        flags[first - n0 :: q] = False
    if root > SIEVE_BASE_LIMIT:
        for i in np.flatnonzero(flags).tolist():
            flags[i] = is_prime(a + s * (n0 + i))
    if a + s * n0 < 2:
        flags[0] = False
    return flags


def enumerate_runs(
    spec: ProgressionSpec, n_lo: int, n_hi: int, min_len: int = 1
) -> list[PrimeRun]:
    """Maximal runs of prime terms whose start index lies in [n_lo, n_hi).

    A run is followed past n_hi to its natural end, so splitting the index
    range never cuts a run in two.
    """
    if not 0 <= n_lo < n_hi:
        raise ProgressionError(f"bad index range [{n_lo}, {n_hi})")
    report = classify(spec.a, spec.s)
    reach = report.initial_max + 1
    n0 = max(0, n_lo - 1)
    flags = _term_flags(spec, n0, n_hi + reach - n0)

    runs = []
    n = n_lo
    while n < n_hi:
        i = n - n0
        if not flags[i] or (n > 0 and flags[i - 1]):
            n += 1
            continue
        j = i
        while flags[j]:
            j += 1
        length = j - i
        bound = report.initial_max if n == 0 else report.generic_max
        if length > bound:
            raise RuntimeError(f"run of {length} at n = {n} exceeds the bound {bound}")
        if length >= min_len:
            left = None if n == 0 else (spec.term(n - 1), factor_of(spec.term(n - 1)))
            end = spec.term(n + length)
            runs.append(
                PrimeRun(
                    n,
                    tuple(spec.term(k) for k in range(n, n + length)),
                    left,
                    (end, factor_of(end)),
                )
            )
        n += length
    return runs


def max_run_oracle(spec: ProgressionSpec, n_lo: int, n_hi: int) -> int:
    """Longest run of prime terms inside [n_lo, n_hi), testing every term directly."""
    if not 0 <= n_lo < n_hi:
        raise ProgressionError(f"bad index range [{n_lo}, {n_hi})")
    if n_hi - n_lo > 10**7:
        raise ProgressionError("oracle range limited to 10^7 indices")
    best = cur = 0
    for n in range(n_lo, n_hi):
        if is_prime(spec.term(n)):
            cur += 1
            best = max(best, cur)
        else:
            cur = 0
    return best
