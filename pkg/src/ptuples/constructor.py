"""Greedy construction, leftward extension and verification of exceptional p-tuples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .patterns import (
    ExceptionalSpec,
    NotBlocked,
    PatternError,
    StopCertificate,
    mirrored,
    stop_certificate,
    validate_exceptional,
)
from .primecore import factor_of, is_prime

DEFAULT_MEMBER_LIMIT = 10**7


class TupleError(ValueError):
    pass


class SeedNotPrime(TupleError):
    pass


class StepExhausted(TupleError):
    def __init__(self, msg: str, partial: tuple[int, ...]):
        super().__init__(msg)
        self.partial = partial


class CompositeMember(TupleError):
    def __init__(self, index: int, value: int, factor: int | None):
        super().__init__(f"member {index} = {value} is not prime (factor {factor})")
        self.index = index
        self.value = value
        self.factor = factor


class InadmissibleGaps(TupleError):
    pass


class ExtensionExists(TupleError):
    def __init__(self, side: str, prime: int | None):
        what = f"prime {prime}" if prime is not None else "an unblocked step"
        super().__init__(f"tuple extends on the {side}: {what}")
        self.side = side
        self.prime = prime


@dataclass(frozen=True)
class PrimeTuple:
    members: tuple[int, ...]
    spec: ExceptionalSpec
    left_stop: StopCertificate | None = None
    right_stop: StopCertificate | None = None

    @property
    def gaps(self) -> tuple[int, ...]:
        m = self.members
        return tuple(b - a for a, b in zip(m, m[1:]))

    def __len__(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        return {
            "p": self.spec.p,
            "d1": self.spec.d1,
            "members": [f"{m:+d}" for m in self.members],
            "gaps": list(self.gaps),
            "pattern": self.spec.render(),
            "left_stop": str(self.left_stop) if self.left_stop else None,
            "right_stop": str(self.right_stop) if self.right_stop else None,
        }


def _check_seed(p: int, d1: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if d1 % p == 0:
        raise ValueError(f"{p} divides d1 = {d1}")


def _step_gaps(d1: int, p: int, limit: int) -> Iterator[int]:
    """Positive admissible gaps 2(d1 + n p), ascending, not above limit."""
    n = 0 if d1 > 0 else -(d1 // p)
    while True:
        g = 2 * (d1 + n * p)
        if g > limit:
            return
        if g > 0:
            yield g
        n += 1


def greedy_construct(p: int, d1: int, member_limit: int = DEFAULT_MEMBER_LIMIT) -> PrimeTuple:
    """Build p, p + 2*d1, ... choosing at every step the nearest prime 2(d1 + n p) ahead."""
    _check_seed(p, d1)
    if d1 <= 0:
        raise ValueError(f"greedy construction walks right; d1 must be positive, got {d1}")
    if member_limit < p:
        raise ValueError("member_limit must be at least p")
    if not is_prime(p + 2 * d1):
        raise SeedNotPrime(f"{p}+2*{d1} = {p + 2 * d1} is not prime")

    members = [p, p + 2 * d1]
    seen = set(members)
    while len(members) < p:
        cur = members[-1]
        for g in _step_gaps(d1, p, member_limit):
            if cur + g not in seen and is_prime(cur + g):
                members.append(cur + g)
                seen.add(cur + g)
                break
        else:
            raise StepExhausted(
                f"no prime within {member_limit} after {cur} (step {len(members)})",
                tuple(members),
            )
    spec = validate_exceptional(p, [b - a for a, b in zip(members, members[1:])])
    return PrimeTuple(tuple(members), spec, None, stop_certificate(spec, members[-1]))


def _try_stop(spec: ExceptionalSpec, member: int) -> StopCertificate | None:
    try:
        return stop_certificate(spec, member)
    except NotBlocked:
        return None


def extend_left(
    tup: PrimeTuple, member_limit: int = DEFAULT_MEMBER_LIMIT
) -> PrimeTuple:
    """Prepend members first - 2(d1 + n p), smallest gap first, up to 2p - 1 members.

    Targets may be negative; a target qualifies when its magnitude is prime and
    it is not already a member.
    """
    spec = tup.spec
    p = spec.p
    d1 = spec.d1 % p  # smallest positive gap of the family
    members = list(tup.members)
    seen = set(members)
    while len(members) < 2 * p - 1:
        if _try_stop(mirrored(spec), members[0]) is not None:
            break
        cur = members[0]
        for g in _step_gaps(d1, p, member_limit):
            if cur - g not in seen and is_prime(cur - g):
                members.insert(0, cur - g)
                seen.add(cur - g)
                break
        else:
            break
    if len(members) == len(tup.members):
        return tup
    new_spec = validate_exceptional(p, [b - a for a, b in zip(members, members[1:])])
    return PrimeTuple(
        tuple(members),
        new_spec,
        _try_stop(mirrored(new_spec), members[0]),
        _try_stop(new_spec, members[-1]),
    )


def enumerate_walks(
    p: int, d1: int, gap_bound: int, value_bound: int
) -> Iterator[PrimeTuple]:
    """All p-member walks from p using signed gaps 2(d1 + n p) with |gap| <= gap_bound.

    Members are pairwise distinct in magnitude and bounded by value_bound in
    magnitude. Walks come out in lexicographic order of their gap sequences.
    """
    _check_seed(p, d1)
    if gap_bound < 2 or value_bound < p:
        raise ValueError("gap_bound must be >= 2 and value_bound >= p")
    n_lo = -((gap_bound // 2 + d1) // p) - 1
    n_hi = (gap_bound // 2 - d1) // p + 1
    gaps = sorted(
        2 * (d1 + n * p)
        for n in range(n_lo, n_hi + 1)
        if 0 < abs(2 * (d1 + n * p)) <= gap_bound
    )
    path = [p]
    used = {p}

    def dfs() -> Iterator[tuple[int, ...]]:
        if len(path) == p:
            yield tuple(path)
            return
        cur = path[-1]
        for g in gaps:
            nxt = cur + g
            if abs(nxt) > value_bound or abs(nxt) in used or not is_prime(nxt):
                continue
            path.append(nxt)
            used.add(abs(nxt))
            yield from dfs()
            path.pop()
            used.discard(abs(nxt))

    for members in dfs():
        spec = validate_exceptional(p, [b - a for a, b in zip(members, members[1:])])
        spec = _with_seed(spec, d1)
        yield PrimeTuple(members, spec, None, stop_certificate(spec, members[-1]))


def _with_seed(spec: ExceptionalSpec, d1: int) -> ExceptionalSpec:
    """Re-express spec with a different representative d1 of the same class."""
    p = spec.p
    shift = (spec.d1 - d1) // p
    return ExceptionalSpec(p, d1, tuple(n + shift for n in spec.half_gap_multipliers))


def _extension(members: Sequence[int], spec: ExceptionalSpec, side: str) -> int | None:
    """Nearest prime reachable by one admissible step from the given end, if any."""
    p = spec.p
    end = members[-1] if side == "right" else members[0]
    direction = 1 if side == "right" else -1
    mags = {abs(m) for m in members}
    step_spec = spec if side == "right" else mirrored(spec)
    if _try_stop(step_spec, end) is not None:
        # every step lands on a multiple of p, so only +-p could be prime; both
        # are one admissible (possibly backwards) step away
        return None if p in mags else p
    for g in _step_gaps(spec.d1 % p, p, DEFAULT_MEMBER_LIMIT):
        cand = end + direction * g
        if abs(cand) not in mags and is_prime(cand):
            return cand
    return None


def verify_tuple(members: Sequence[int], p: int) -> PrimeTuple:
    """Check primality, mod-p admissibility and maximality at both ends.

    A tuple whose first member is p itself is anchored there and only has to be
    blocked on the right.
    """
    members = tuple(int(m) for m in members)
    if len(members) < 2:
        raise ValueError("need at least two members")
    for k, m in enumerate(members):
        if not is_prime(m):
            raise CompositeMember(k, m, factor_of(m))
    try:
        spec = validate_exceptional(p, [b - a for a, b in zip(members, members[1:])])
    except PatternError as exc:
        raise InadmissibleGaps(str(exc)) from exc

    right = _extension(members, spec, "right")
    if right is not None:
        raise ExtensionExists("right", right)
    left_stop = None
    if members[0] != p:
        left = _extension(members, spec, "left")
        if left is not None:
            raise ExtensionExists("left", left)
        left_stop = stop_certificate(mirrored(spec), members[0])
    return PrimeTuple(members, spec, left_stop, stop_certificate(spec, members[-1]))
