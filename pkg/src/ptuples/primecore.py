"""Deterministic primality, smallest-factor extraction and a mod-30 wheel sieve.

Everything here works on signed integers: a value counts as prime when its
magnitude does, so leftward tuple continuations such as -13, -37 are handled
by the same predicates as ordinary primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_MAGNITUDE = 1 << 63
DEFAULT_SEGMENT = 1 << 22
# base primes for windowed sieving; windows above SIEVE_BASE_LIMIT**2 get
# their survivors confirmed by is_prime
SIEVE_BASE_LIMIT = 1 << 22

WHEEL = (1, 7, 11, 13, 17, 19, 23, 29)
_WHEEL_INDEX = {r: k for k, r in enumerate(WHEEL)}

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
# the first 13 prime bases are deterministic for n < 3.3e24, far past 2^63
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """True iff |n| is prime. Never probabilistic for |n| < 3.3e24."""
    n = abs(int(n))
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if n < 97 * 97:
        return True
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"pollard-brent failed on {n}")


def _prime_factors(n: int) -> list[int]:
    if n == 1:
        return []
    if is_prime(n):
        return [n]
    d = _pollard_brent(n)
    return _prime_factors(d) + _prime_factors(n // d)


def smallest_prime_factor(n: int) -> int:
    """Least prime dividing n; n itself when n is prime."""
    n = int(n)
    if n < 2:
        raise ValueError(f"smallest_prime_factor needs n >= 2, got {n}")
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return q
    # cheap trial division before falling back to rho
    q = 101
    while q < 1000 and q * q <= n:
        if n % q == 0:
            return q
        q += 2
    if q * q > n or is_prime(n):
        return n
    return min(_prime_factors(n))


def prime_factors(n: int) -> list[int]:
    """Prime factors of n >= 1 with multiplicity, ascending."""
    n = int(n)
    if n < 1:
        raise ValueError(f"prime_factors needs n >= 1, got {n}")
    out = []
    for q in _SMALL_PRIMES:
        while n % q == 0:
            out.append(q)
            n //= q
    return sorted(out + _prime_factors(n))


def factor_of(value: int) -> int | None:
    """Smallest prime factor of |value|, or None for 0 and +-1."""
    m = abs(int(value))
    return smallest_prime_factor(m) if m >= 2 else None


@lru_cache(maxsize=8)
def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(limit) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    out = np.flatnonzero(flags).astype(np.int64)
    out.flags.writeable = False
    return out


@lru_cache(maxsize=1)
def _wheel_base(limit: int) -> tuple[np.ndarray, np.ndarray]:
    qs = primes_up_to(limit)
    qs = qs[qs >= 7]
    inv30 = np.array([pow(30, -1, int(q)) for q in qs], dtype=np.int64)
    return qs, inv30


@dataclass(frozen=True)
class SieveWindow:
    """Primality flags for [lo, hi] on a mod-30 wheel.

    ``flags[j]`` holds one bit per residue in WHEEL for the block
    ``base + 30*j``; 2, 3 and 5 are tracked in ``small``.
    """

    lo: int
    hi: int
    base: int
    flags: np.ndarray = field(repr=False)
    small: tuple[int, ...] = ()

    def __contains__(self, n: int) -> bool:
        n = int(n)
        if n < self.lo or n > self.hi:
            return False
        if n < 7:
            return n in self.small
        k = _WHEEL_INDEX.get(n % 30)
        if k is None:
            return False
        j = (n - self.base) // 30
        return bool((self.flags[j] >> k) & 1)

    def primes(self) -> np.ndarray:
        bits = np.unpackbits(self.flags[:, None], axis=1, bitorder="little")
        j, k = np.nonzero(bits)
        vals = self.base + 30 * j.astype(np.int64) + np.asarray(WHEEL, dtype=np.int64)[k]
        return np.concatenate([np.asarray(self.small, dtype=np.int64), vals])

    def count(self) -> int:
        return len(self.small) + int(np.unpackbits(self.flags).sum())


def sieve_window(lo: int, hi: int, max_width: int = DEFAULT_SEGMENT) -> SieveWindow:
    """Sieve [lo, hi] with a mod-30 wheel."""
    lo, hi = int(lo), int(hi)
    if lo < 2 or hi <= lo:
        raise ValueError(f"bad sieve window [{lo}, {hi}]")
    if hi >= MAX_MAGNITUDE:
        raise ValueError(f"sieve window exceeds 2^63: {hi}")
    if hi - lo > max_width:
        raise ValueError(f"sieve window width {hi - lo} exceeds segment limit {max_width}")

    base = lo - lo % 30
    nblocks = (hi - base) // 30 + 1
    flags = np.ones((8, nblocks), dtype=bool)
    root = math.isqrt(hi)
    qs, inv30 = _wheel_base(SIEVE_BASE_LIMIT)
    take = int(np.searchsorted(qs, min(root, SIEVE_BASE_LIMIT), side="right"))
    qs, inv30 = qs[:take], inv30[:take]
    qsq = qs * qs

    for k, r in enumerate(WHEEL):
        # first block j with base + 30j + r == 0 (mod q), then lift to >= q*q
        j0 = (-((base % qs) + r) % qs) * inv30 % qs
        if base + r >= SIEVE_BASE_LIMIT * SIEVE_BASE_LIMIT:
            jmin = np.zeros_like(qs)
        else:
            jmin = np.maximum(0, -((base + r - qsq) // 30))
        lag = jmin - j0
        j0 = j0 + np.where(lag > 0, -(-lag // qs) * qs, 0)
        row = flags[k]
        dense = qs < nblocks // 8
        for q, j in zip(qs[dense].tolist(), j0[dense].tolist()):
            row[j::q] = False
        sq, sj = qs[~dense], j0[~dense]
        while sj.size:
            hit = sj < nblocks
            row[sj[hit]] = False
            sq, sj = sq[hit], sj[hit] + sq[hit]

    rel = 30 * np.arange(nblocks, dtype=np.int64)
    for k, r in enumerate(WHEEL):
        v = rel + r
        flags[k] &= (v >= lo - base) & (v <= hi - base) & (v + base != 1)
    if root > SIEVE_BASE_LIMIT:
        for k, r in enumerate(WHEEL):
            for j in np.flatnonzero(flags[k]).tolist():
                if not is_prime(base + 30 * j + r):
                    flags[k, j] = False

    packed = np.packbits(flags, axis=0, bitorder="little")[0]
    packed.flags.writeable = False
    small = tuple(q for q in (2, 3, 5) if lo <= q <= hi)
    return SieveWindow(lo=lo, hi=hi, base=base, flags=packed, small=small)
